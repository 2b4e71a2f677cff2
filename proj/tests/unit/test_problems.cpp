#include "doctest.h"
#include "ogaprox/problems/fairness.hpp"
#include "ogaprox/problems/mksvm.hpp"
#include "ogaprox/problems/quadratic.hpp"
#include "ogaprox/problems/toy.hpp"
#include "ogaprox/solver.hpp"

#include <cmath>

using namespace ogaprox;

namespace {

Matrix randn(Index r, Index c, Philox4x32& rng) {
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m(i) = rng.normal();
  return m;
}

// Central-difference gradient of y ↦ Φ(x, y).
Vector fd_grad_y(const SaddleProblem& p, const Vector& x, const Vector& y, double h = 1e-6) {
  Vector g(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    Vector yp = y, ym = y;
    yp(i) += h;
    ym(i) -= h;
    g(i) = (p.phi(x, yp) - p.phi(x, ym)) / (2 * h);
  }
  return g;
}

FairnessGroup random_group(Index n, Index d, Philox4x32& rng) {
  FairnessGroup g;
  g.features = randn(n, d, rng);
  g.labels.resize(n);
  for (Index j = 0; j < n; ++j) g.labels(j) = g.features(j, 0) + 0.5 * rng.normal() >= 0 ? 1.0 : -1.0;
  return g;
}

double hinge_prox_objective(const FairnessGroup& g, double tau, const Vector& x, const Vector& u) {
  const Vector margins = (g.features * u).cwiseProduct(g.labels);
  double loss = 0.0;
  for (Index j = 0; j < margins.size(); ++j) loss += std::max(0.0, 1.0 - margins(j));
  return tau * loss / static_cast<double>(margins.size()) + 0.5 * (u - x).squaredNorm();
}

// prox of (τ/n)Σ max{0, 1 − s_jᵀu} through its dual box QP:
//   min_λ ½‖Sᵀλ‖² − λᵀ(e − Sx),  0 ≤ λ ≤ τ/n,  u = x + Sᵀλ.
Vector hinge_prox_dual(const FairnessGroup& g, double tau, const Vector& x) {
  const Index n = g.labels.size();
  const Matrix s = g.labels.asDiagonal() * g.features;
  QpProblem p;
  p.q_matrix = s * s.transpose();
  p.q_vector = -(Vector::Ones(n) - s * x);
  p.ineq_matrix.resize(2 * n, n);
  p.ineq_matrix << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  p.ineq_vector.resize(2 * n);
  p.ineq_vector << Vector::Zero(n), Vector::Constant(n, -tau / static_cast<double>(n));
  const QpResult r = solve_qp(p, 1e-13);
  REQUIRE(r.status == QpStatus::Optimal);
  return x + s.transpose() * r.solution;
}

}  // namespace

TEST_CASE("toy gradient") {
  Philox4x32 rng(30);
  const ToyProblem p(ToyProblem::random_matrix(4, 6, rng), 0.0);
  const Matrix& a = p.a_matrix();
  CHECK(p.grad_y(-Vector::Ones(4), Vector::Zero(6)).norm() == 0.0);
  CHECK((p.grad_y(Vector::Unit(4, 0), Vector::Zero(6)) - a.row(0).transpose()).norm() == 0.0);
  for (int t = 0; t < 20; ++t) {
    const Vector x = p.sample_x(rng), y = p.sample_y(rng);
    CHECK((p.grad_y(x, y) - fd_grad_y(p, x, y)).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("toy construction and prox") {
  Philox4x32 rng(31);
  Matrix rank_deficient = randn(3, 5, rng);
  rank_deficient.row(2) = rank_deficient.row(0) + rank_deficient.row(1);
  CHECK_THROWS_AS(ToyProblem(rank_deficient, 0.0), InvalidArgument);
  const Matrix a = ToyProblem::random_matrix(5, 7, rng);
  CHECK(a.cwiseAbs().maxCoeff() <= 3.0);
  const ToyProblem p(a, 0.3);
  CHECK(p.constants().l_yx >= Eigen::JacobiSVD<Matrix>(a).singularValues()(0));

  const Vector y = p.sample_y(rng);
  CHECK((p.prox_phi_x(0.7, y, Vector::Zero(5)) - Vector::Zero(5)).norm() == 0.0);
  const Vector x = p.sample_x(rng);
  const Vector w = a * y;
  const Vector px = p.prox_phi_x(0.7, y, x);
  for (Index i = 0; i < 5; ++i) CHECK(px(i) == prox_positive_part_scaled(0.7, std::max(w(i), 0.0), x(i)));
  Vector infeasible = Vector::Zero(7);
  while (p.in_y_domain(infeasible)) infeasible = randn(7, 1, rng);
  CHECK_THROWS_AS(p.prox_phi_x(0.7, infeasible, x), InvalidArgument);
}

TEST_CASE("toy saddle points") {
  Philox4x32 rng(32);
  const Matrix a = ToyProblem::random_matrix(5, 8, rng);
  for (double nu : {0.0, 0.3}) {
    const ToyProblem p(a, nu);
    const auto [xs, ys] = *p.saddle_point();
    CHECK(xs == -Vector::Ones(5));
    if (nu > 0) CHECK(ys.norm() == 0.0);
    if (nu == 0) {
      CHECK(ys.norm() > 0.5);
      CHECK((a * ys).minCoeff() >= -1e-10);
    }
    const double value = p.psi_value(xs, ys).value;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Vector x = p.sample_x(rng), y = p.sample_y(rng);
      worst = std::max(worst, p.psi_value(xs, y).value - value);
      worst = std::max(worst, value - p.psi_value(x, ys).value);
    }
    CHECK(worst <= 1e-10);
    CHECK(p.gap(xs, ys, xs, ys).value == doctest::Approx(0.0));
  }

  const ToyProblem p(a, 0.3);
  const auto [xs, ys] = *p.saddle_point();
  for (int t = 0; t < 20; ++t) {
    const Vector xb = p.sample_x(rng), yb = p.sample_y(rng);
    const double closed = p.gap(xs, ys, xb, yb).value;
    CHECK(closed == doctest::Approx(0.15 * yb.squaredNorm()).epsilon(1e-12));
    const double direct = (p.psi_value(xb, ys) - p.psi_value(xs, yb)).value;
    CHECK(closed == doctest::Approx(direct).epsilon(1e-10));
  }

  const auto r = run<double>(p, default_schedule(ScheduleType::AdaptiveCSC, p.constants()), Vector::Zero(5),
                     p.retract_y(Vector::Ones(8)), 100);
  CHECK(p.gap(xs, ys, r.state.erg_x, r.state.erg_y).value >= -1e-10);
}

TEST_CASE("bilinear and quadratic problems") {
  Philox4x32 rng(33);
  const Matrix a = randn(4, 3, rng);
  const BilinearProblem b(a, Vector::Zero(4));
  const Vector x = randn(3, 1, rng), y = randn(4, 1, rng);
  CHECK(b.prox_phi_x(0.3, y, x) == x - 0.3 * a.transpose() * y);

  const QuadraticSCSC zero(a, Vector::Zero(3), Vector::Zero(4), 1.0, 2.0);
  CHECK(zero.saddle_point()->first.norm() <= 1e-15);
  CHECK(zero.saddle_point()->second.norm() <= 1e-15);
  Vector bl = randn(3, 1, rng), cl = randn(4, 1, rng);
  const QuadraticSCSC decoupled(Matrix::Zero(4, 3), bl, cl, 2.0, 4.0);
  CHECK((decoupled.saddle_point()->first + bl / 2.0).norm() <= 1e-15);
  CHECK((decoupled.saddle_point()->second + cl / 4.0).norm() <= 1e-15);
  const auto q = QuadraticSCSC::random(8, 6, 1.0, 0.5, rng, 2.0);
  CHECK(q.kkt_residual() <= 1e-10);
  CHECK(q.constants().l_yx == doctest::Approx(2.0).epsilon(2e-3));
  CHECK_THROWS_AS(QuadraticSCSC(a, bl, cl, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("kernels are normalized to unit diagonal") {
  Philox4x32 rng(34);
  const Matrix points = randn(15, 4, rng);
  for (auto type : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear}) {
    const Matrix k = normalize_kernel(kernel_matrix(type, points));
    CHECK(k.trace() == doctest::Approx(15.0).epsilon(1e-14));
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(k).eigenvalues().minCoeff() >= -1e-8);
  }
  const Matrix g = kernel_matrix(KernelType::Gaussian, points);
  CHECK(g(0, 1) == doctest::Approx(std::exp(-5.0 * (points.row(0) - points.row(1)).squaredNorm())));
  CHECK_THROWS_AS(normalize_kernel(Matrix::Zero(3, 3)), InvalidArgument);
}

TEST_CASE("mksvm gradient, prox and constants") {
  Philox4x32 rng(35);
  const Matrix points = randn(12, 3, rng);
  std::vector<Matrix> kernels;
  for (auto type : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear})
    kernels.push_back(normalize_kernel(kernel_matrix(type, points)));
  std::vector<Index> train = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  Vector labels(9);
  for (Index i = 0; i < 9; ++i) labels(i) = i % 2 ? 1.0 : -1.0;
  const double box_c = 1.0;
  const auto p = MkSvmProblem::from_kernels(kernels, train, labels, 0.1, 0.2, box_c);

  // c = d(n + l) and every r_i = n + l.
  double max_norm = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(p.m_list()[i](0, 0) == doctest::Approx(3.0).epsilon(1e-14));
    max_norm = std::max(max_norm, Eigen::SelfAdjointEigenSolver<Matrix>(p.m_list()[i]).eigenvalues().cwiseAbs().maxCoeff());
  }
  CHECK(p.constants().l_yy >= max_norm);
  CHECK(p.constants().l_yy <= max_norm * 1.002);
  CHECK(p.constants().l_yx == doctest::Approx(box_c * std::sqrt(27.0) * p.constants().l_yy).epsilon(1e-14));

  const Vector x = p.sample_x(rng);
  CHECK(p.grad_y(x, Vector::Zero(9)) == Vector::Ones(9));
  const Vector y = p.sample_y(rng);
  CHECK((p.grad_y(Vector::Unit(3, 0), y) - (Vector::Ones(9) - p.m_list()[0] * y)).norm() <= 1e-13);
  CHECK((p.grad_y(x, y) - fd_grad_y(p, x, y)).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK_THROWS_AS(p.grad_y(Vector::Ones(3), y), InvalidArgument);

  const Vector v = randn(3, 1, rng);
  const MkSvmProblem no_mu = MkSvmProblem::from_kernels(kernels, train, labels, 0.0, 0.2, box_c);
  CHECK((no_mu.prox_phi_x(0.0, y, v) - project_simplex(v)).norm() <= 1e-15);
  CHECK((p.prox_phi_x(0.5, Vector::Zero(9), v) - project_simplex(v / 1.05)).norm() <= 1e-15);

  const double tau = 0.7;
  const auto f = [&](const Vector& u) {
    if (!p.in_x_domain(u)) return ExtendedReal::plus_inf();
    return ExtendedReal::finite(tau * p.phi(u, y));
  };
  const auto retract = [&](const Vector& u) { return p.retract_x(u); };
  CHECK(prox_oracle(f, v, p.prox_phi_x(tau, y, v), 1000, 1, retract) <= 1e-8);

  // prox_{σg} with g = δ_Y + (ν/2)‖·‖² is the projection of v/(1 + νσ).
  const Vector w = randn(9, 1, rng);
  const BoxHyperplaneSet set(0.0, box_c, labels, 0.0);
  CHECK(p.prox_g(0.4, w) == project_box_hyperplane(set, w / (1.0 + 0.2 * 0.4)));
}

TEST_CASE("mksvm prediction") {
  Matrix points(4, 2);
  points << 1.0, 0.1, -1.0, -0.1, 2.0, 0.5, -1.5, 0.3;
  std::vector<Matrix> kernels;
  for (auto type : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear})
    kernels.push_back(normalize_kernel(kernel_matrix(type, points)));
  const std::vector<Index> train = {0, 1}, test = {2, 3};
  Vector labels(2);
  labels << 1.0, -1.0;
  const auto p = MkSvmProblem::from_kernels(kernels, train, labels, 0.0, 0.0, 10.0);
  const auto kind = default_schedule(ScheduleType::ConstantCC, p.constants(), std::optional<double>(0.1));
  const auto r = run<double>(p, kind, Vector::Constant(3, 1.0 / 3.0), Vector::Zero(2), 3000);
  const Vector eta = mksvm_eta(kernels, r.state.x_cur);
  CHECK(eta.sum() == doctest::Approx(3.0));
  const auto pred = mksvm_predict(kernels, train, labels, test, r.state.y_cur, eta, 0.0, 10.0);
  CHECK_FALSE(pred.fallback);
  CHECK(pred.labels == std::vector<int>{1, -1});

  // ν = 0 reduces γ to b_{j0} − Σ b_iα_iK*_{i,j0}.
  const Index j0 = pred.j0;
  double s = 0.0;
  for (Index i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += labels(i) * r.state.y_cur(i) * eta(static_cast<Index>(j)) * kernels[j](train[i], train[j0]);
  CHECK(pred.gamma == doctest::Approx(labels(j0) - s).epsilon(1e-12));

  // All α = 0: empty band.
  CHECK_THROWS_AS(mksvm_predict(kernels, train, labels, test, Vector::Zero(2), eta, 0.0, 10.0, false),
                  NoActiveSupportVector);
  const auto degenerate = mksvm_predict(kernels, train, labels, test, Vector::Zero(2), eta, 0.0, 10.0);
  CHECK(degenerate.fallback);
  CHECK(degenerate.labels[0] == degenerate.labels[1]);
  CHECK(degenerate.labels[0] == (degenerate.gamma >= 0 ? 1 : -1));
}

TEST_CASE("fairness problem construction and gradient") {
  Philox4x32 rng(36);
  std::vector<FairnessGroup> groups = {random_group(6, 3, rng), random_group(4, 3, rng)};
  const FairnessProblem p(groups);
  CHECK(p.constants().l_yx ==
        doctest::Approx(std::sqrt(groups[0].features.squaredNorm() / 6 + groups[1].features.squaredNorm() / 4)));
  const Vector x = randn(3, 1, rng);
  const Vector losses = p.group_losses(x);
  CHECK(losses(0) == doctest::Approx(hinge_prox_objective(groups[0], 1.0, x, x)));
  CHECK(p.grad_y(x, Vector::Constant(2, 0.5)) == losses);

  FairnessGroup bad = groups[0];
  bad.labels(0) = 0.5;
  CHECK_THROWS_AS(FairnessProblem({bad}), InvalidArgument);
  FairnessGroup empty;
  empty.features.resize(0, 3);
  CHECK_THROWS_AS(FairnessProblem({empty}), InvalidArgument);

  std::vector<int> pred = predict_linear(groups[0].features, Vector::Zero(3));
  CHECK(pred == std::vector<int>(6, 1));
}

TEST_CASE("fairness prox") {
  Philox4x32 rng(37);
  std::vector<FairnessGroup> groups = {random_group(12, 5, rng), random_group(8, 5, rng)};
  const FairnessProblem p(groups);
  const Vector x = randn(5, 1, rng);
  CHECK(p.prox_phi_x(0.0, Vector::Constant(2, 0.5), x) == x);

  // Random instances against the prox oracle.
  ProxWorkspace ws;
  for (int t = 0; t < 5; ++t) {
    const Vector y = p.sample_y(rng), v = randn(5, 1, rng);
    const double tau = rng.uniform(0.1, 2.0);
    const Vector u = p.prox_phi_x(tau, y, v, &ws);
    const auto f = [&](const Vector& w) { return ExtendedReal::finite(tau * p.phi(w, y)); };
    CHECK(prox_oracle(f, v, u, 1000, static_cast<std::uint64_t>(t)) <= 1e-7);
  }

  // All weight on one group: the single-group hinge prox, checked against a
  // subgradient method with weighted averaging.
  const double tau = 0.8;
  const Vector u = p.prox_phi_x(tau, Vector::Unit(2, 1), x);
  Vector w = x, avg = Vector::Zero(5);
  double weight = 0.0;
  const FairnessGroup& g = groups[1];
  const double n = static_cast<double>(g.labels.size());
  for (int k = 0; k < 1000000; ++k) {
    Vector sub = w - x;
    const Vector margins = (g.features * w).cwiseProduct(g.labels);
    for (Index j = 0; j < margins.size(); ++j)
      if (margins(j) < 1.0) sub -= (tau / n) * g.labels(j) * g.features.row(j).transpose();
    w -= (2.0 / (k + 2.0)) * sub;
    avg += (k + 1.0) * w;
    weight += k + 1.0;
  }
  avg /= weight;
  const double f_qp = hinge_prox_objective(g, tau, x, u), f_sub = hinge_prox_objective(g, tau, x, avg);
  CHECK(f_qp <= f_sub + 1e-12);
  CHECK(f_sub - f_qp <= 1e-5);
  CHECK((u - hinge_prox_dual(g, tau, x)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("one-group fairness run is a proximal point method on the hinge loss") {
  Philox4x32 rng(38);
  const FairnessGroup g = random_group(20, 4, rng);
  const FairnessProblem p({g});
  const auto kind = default_schedule(ScheduleType::ConstantCC, p.constants());
  std::vector<Vector> iterates;
  const MetricHookT<double> hook = [&](const IterationViewT<double>& v) { iterates.push_back(v.state.x_cur); };
  run<double>(p, kind, Vector::Zero(4), Vector::Ones(1), 30, {hook});
  CHECK(p.constants().l_yy == 0.0);
  Vector x = Vector::Zero(4);
  double worst = 0.0;
  for (const Vector& it : iterates) {
    x = hinge_prox_dual(g, kind.tau, x);
    worst = std::max(worst, (it - x).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("model problems pass validation with 1000 trials") {
  Philox4x32 rng(39);
  const ToyProblem toy(ToyProblem::random_matrix(6, 9, rng), 0.3);
  const BilinearProblem bilinear(randn(5, 4, rng), randn(5, 1, rng), 0.2);
  const auto quad = QuadraticSCSC::random(5, 6, 0.5, 0.7, rng);
  const Matrix points = randn(14, 3, rng);
  std::vector<Matrix> kernels;
  for (auto type : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear})
    kernels.push_back(normalize_kernel(kernel_matrix(type, points)));
  std::vector<Index> train(10);
  Vector labels(10);
  for (Index i = 0; i < 10; ++i) {
    train[static_cast<std::size_t>(i)] = i;
    labels(i) = points(i, 0) >= 0 ? 1.0 : -1.0;
  }
  if (labels.minCoeff() == labels.maxCoeff()) labels(0) = -labels(0);
  const auto mk = MkSvmProblem::from_kernels(kernels, train, labels, 0.1, 0.1, 1.0);
  const FairnessProblem fair({random_group(8, 4, rng), random_group(6, 4, rng)});

  const std::vector<const SaddleProblem*> problems = {&toy, &bilinear, &quad, &mk, &fair};
  for (const SaddleProblem* p : problems) {
    const ValidationReport r = validate_problem(*p, 1000, 7);
    INFO(p->name());
    CHECK(r.prox_checked);
    CHECK(r.passed());
  }
}
