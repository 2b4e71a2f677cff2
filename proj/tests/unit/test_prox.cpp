#include "doctest.h"
#include "ogaprox/prox.hpp"
#include "ogaprox/rng.hpp"

#include <functional>

using namespace ogaprox;

namespace {

Vector randn(Index n, Philox4x32& rng, double scale = 1.0) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = scale * rng.normal();
  return v;
}

Vector signs(Index n, Philox4x32& rng) {
  Vector b(n);
  for (Index i = 0; i < n; ++i) b(i) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
  return b;
}

// Projection QP oracle: min ½‖u − v‖² subject to the given constraints.
Vector qp_projection(const Vector& v, const Matrix& g, const Vector& h, const Matrix& e, const Vector& ev) {
  QpProblem p;
  p.q_matrix = Matrix::Identity(v.size(), v.size());
  p.q_vector = -v;
  p.ineq_matrix = g;
  p.ineq_vector = h;
  p.eq_matrix = e;
  p.eq_vector = ev;
  const QpResult r = solve_qp(p, 1e-12);
  REQUIRE(r.status == QpStatus::Optimal);
  return r.solution;
}

ExtendedReal indicator(bool inside) { return inside ? ExtendedReal::finite(0.0) : ExtendedReal::plus_inf(); }

void check_projection_properties(const std::function<Vector(const Vector&)>& proj, Index n, Philox4x32& rng) {
  double worst_expansion = 0.0, worst_idem = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double scale = t % 3 == 0 ? 0.1 : (t % 3 == 1 ? 1.0 : 10.0);
    const Vector u = randn(n, rng, scale), v = randn(n, rng, scale);
    const Vector pu = proj(u), pv = proj(v);
    worst_expansion = std::max(worst_expansion, (pu - pv).norm() - (u - v).norm());
    worst_idem = std::max(worst_idem, (proj(pu) - pu).cwiseAbs().maxCoeff());
  }
  CHECK(worst_expansion <= 1e-12);
  CHECK(worst_idem <= 1e-10);
}

}  // namespace

TEST_CASE("simplex projection examples") {
  Vector v(3);
  v << 1, 0, 0;
  CHECK(project_simplex(v) == v);
  v << 0.5, 0.5, 0.5;
  CHECK((project_simplex(v) - Vector::Constant(3, 1.0 / 3.0)).norm() < 1e-15);
  CHECK_THROWS_AS(project_simplex(Vector()), InvalidArgument);
  v(1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(project_simplex(v), InvalidArgument);
}

TEST_CASE("simplex projection matches the QP oracle and the prox oracle") {
  Philox4x32 rng(10);
  for (int t = 0; t < 100; ++t) {
    const Vector v = randn(10, rng, t % 2 ? 1.0 : 5.0);
    const Vector p = project_simplex(v);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
    const Vector oracle =
        qp_projection(v, Matrix::Identity(10, 10), Vector::Zero(10), Matrix::Ones(1, 10), Vector::Ones(1));
    CHECK((p - oracle).cwiseAbs().maxCoeff() <= 1e-8);
  }
  const Vector x = randn(6, rng, 2.0);
  const auto f = [](const Vector& u) { return indicator(u.minCoeff() >= -1e-12 && std::abs(u.sum() - 1) <= 1e-12); };
  const auto retract = [](const Vector& u) { return project_simplex(u); };
  CHECK(prox_oracle(f, x, project_simplex(x), 1000, 1, retract) <= 1e-8);
  check_projection_properties(retract, 6, rng);
}

TEST_CASE("box-hyperplane set construction") {
  Vector b(3);
  b << 1, 1, 1;
  CHECK_THROWS_AS(BoxHyperplaneSet(0.0, 1.0, b, 4.0), InfeasibleSet);
  CHECK_THROWS_AS(BoxHyperplaneSet(1.0, 0.0, b, 0.0), InvalidArgument);
  CHECK_THROWS_AS(BoxHyperplaneSet(0.0, 1.0, Vector::Zero(3), 0.0), InvalidArgument);
  CHECK_NOTHROW(BoxHyperplaneSet(0.0, 1.0, b, 3.0));
}

TEST_CASE("box-hyperplane projection matches the QP oracle") {
  Philox4x32 rng(11);
  const Index n = 20;
  for (int t = 0; t < 100; ++t) {
    const Vector b = signs(n, rng);
    const BoxHyperplaneSet s(0.0, 1.0, b, 0.0);
    const Vector v = randn(n, rng, t % 2 ? 1.0 : 3.0);
    const Vector p = project_box_hyperplane(s, v);
    CHECK(s.contains(p, 1e-10));
    Matrix g(2 * n, n);
    g << Matrix::Identity(n, n), -Matrix::Identity(n, n);
    Vector h(2 * n);
    h << Vector::Zero(n), -Vector::Ones(n);
    const Vector oracle = qp_projection(v, g, h, b.transpose(), Vector::Zero(1));
    CHECK((p - oracle).cwiseAbs().maxCoeff() <= 1e-8);
  }
  const Vector b = signs(n, rng);
  const BoxHyperplaneSet s(0.0, 1.0, b, 0.0);
  CHECK(project_box_hyperplane(s, Vector::Zero(n)) == Vector::Zero(n));
  Vector feasible = Vector::Zero(n);
  for (Index i = 0; i < n; ++i)
    if (b(i) > 0) {
      for (Index j = 0; j < n; ++j)
        if (b(j) < 0) {
          feasible(i) = feasible(j) = 0.3;
          break;
        }
      break;
    }
  CHECK((project_box_hyperplane(s, feasible) - feasible).norm() <= 1e-12);

  const auto retract = [&](const Vector& u) { return project_box_hyperplane(s, u); };
  const auto f = [&](const Vector& u) { return indicator(s.contains(u, 1e-9)); };
  const Vector x = randn(n, rng, 2.0);
  CHECK(prox_oracle(f, x, retract(x), 1000, 2, retract) <= 1e-8);
  check_projection_properties(retract, n, rng);
}

TEST_CASE("polytope projection") {
  Philox4x32 rng(12);
  const Index d = 5, n = 7;
  Matrix a(d, n);
  for (Index i = 0; i < a.size(); ++i) a(i) = rng.uniform(-3, 3);
  const PolytopeSet s(a);
  CHECK(project_polytope(s, Vector::Zero(n)) == Vector::Zero(n));

  // Feasible points by rejection sampling.
  std::vector<Vector> feasible;
  while (feasible.size() < 10000) {
    const Vector y = randn(n, rng, 3.0);
    if ((a * y).minCoeff() >= 0.0) feasible.push_back(y);
  }
  CHECK((project_polytope(s, feasible[0]) - feasible[0]).norm() == 0.0);

  for (int t = 0; t < 20; ++t) {
    const Vector v = randn(n, rng, 3.0);
    const Vector p = project_polytope(s, v);
    CHECK((a * p).minCoeff() >= -1e-10);
    const double obj = (p - v).squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& y : feasible) best = std::min(best, (y - v).squaredNorm());
    CHECK(obj <= best + 1e-10);
    const Vector oracle = qp_projection(v, a, Vector::Zero(d), Matrix(0, n), Vector(0));
    CHECK((p - oracle).cwiseAbs().maxCoeff() <= 1e-8);
  }

  // Warm starts give the same answer.
  QpWarmStart warm;
  for (int t = 0; t < 20; ++t) {
    const Vector v = randn(n, rng, 3.0);
    CHECK((project_polytope(s, v, &warm) - project_polytope(s, v)).norm() <= 1e-10);
  }

  const auto retract = [&](const Vector& u) { return project_polytope(s, u); };
  const auto f = [&](const Vector& u) { return indicator((a * u).minCoeff() >= -1e-9); };
  const Vector x = randn(n, rng, 3.0);
  CHECK(prox_oracle(f, x, retract(x), 1000, 3, retract) <= 1e-8);
  check_projection_properties(retract, n, rng);
}

TEST_CASE("prox of the scaled positive part follows the case table") {
  CHECK(prox_positive_part_scaled(1.0, 2.0, -1.0) == -1.0);
  CHECK(prox_positive_part_scaled(1.0, 2.0, 1.5) == 0.0);
  CHECK(prox_positive_part_scaled(1.0, 2.0, 3.0) == 1.0);
  CHECK(prox_positive_part_scaled(1.0, 2.0, 0.0) == 0.0);
  CHECK(prox_positive_part_scaled(1.0, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(prox_positive_part_scaled(1.0, -1.0, 0.5), InvalidArgument);

  Philox4x32 rng(13);
  for (int t = 0; t < 200; ++t) {
    const double tau = rng.uniform(0.01, 3.0), w = rng.uniform(0.0, 3.0);
    Vector x(1);
    x(0) = rng.uniform(-5.0, 5.0);
    Vector c(1);
    c(0) = prox_positive_part_scaled(tau, w, x(0));
    const auto f = [&](const Vector& u) { return ExtendedReal::finite(tau * w * std::max(0.0, u(0))); };
    CHECK(prox_oracle(f, x, c, 1000, static_cast<std::uint64_t>(t)) <= 1e-8);
  }
}

TEST_CASE("prox oracle examples") {
  Philox4x32 rng(14);
  const Vector x = randn(5, rng);
  const auto zero = [](const Vector&) { return ExtendedReal::finite(0.0); };
  CHECK(prox_oracle(zero, x, x, 1000, 1) <= 0.0);
  const double nu = 0.7;
  const auto quad = [&](const Vector& u) { return ExtendedReal::finite(0.5 * nu * u.squaredNorm()); };
  CHECK(prox_oracle(quad, x, x / (1.0 + nu), 1000, 2) <= 1e-8);
  // A wrong candidate is detected.
  CHECK(prox_oracle(quad, x, x, 1000, 3) > 1e-3);
  const auto minus_inf = [](const Vector&) { return ExtendedReal::minus_inf(); };
  CHECK_THROWS_AS(prox_oracle(minus_inf, x, x, 10, 4), InvalidArgument);
}
