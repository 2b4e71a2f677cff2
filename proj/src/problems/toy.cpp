#include "ogaprox/problems/toy.hpp"

#include "ogaprox/linalg.hpp"

#include <cmath>

namespace ogaprox {

namespace {

// Relative slack allowed on Ay ≥ 0 for points produced by the projection.
constexpr double kFeasTol = 1e-8;

double feas_scale(const Matrix& a, const Vector& y) {
  return std::max(1.0, a.cwiseAbs().maxCoeff() * y.cwiseAbs().sum());
}

}  // namespace

ToyProblem::ToyProblem(Matrix a_matrix, double nu) : polytope_(std::move(a_matrix)) {
  const Matrix& a = polytope_.a_matrix();
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("toy: nu must be a finite nonnegative number");
  if (!has_full_row_rank(a)) throw InvalidArgument("toy: A must have full row rank");
  constants_.l_yx = spectral_norm(a);
  constants_.l_yy = 0.0;
  constants_.mu = 0.0;
  constants_.nu = nu;

  const Index d = a.rows(), n = a.cols();
  Vector x_star = -Vector::Ones(d);
  Vector y_star = Vector::Zero(n);
  if (nu == 0.0) {
    // max min_i (Ay)_i over ‖y‖ ≤ 1  ⇔  min ½‖y‖² s.t. Ay ≥ e, rescaled.
    // Solved through its dual: min_{λ ≥ 0} ½‖Aᵀλ‖² − eᵀλ, y = Aᵀλ.
    QpProblem dual;
    dual.q_matrix = a * a.transpose();
    dual.q_matrix = 0.5 * (dual.q_matrix + dual.q_matrix.transpose()).eval();
    dual.q_vector = -Vector::Ones(d);
    dual.ineq_matrix = Matrix::Identity(d, d);
    dual.ineq_vector = Vector::Zero(d);
    const QpResult res = solve_qp(dual);
    if (res.status != QpStatus::Optimal) throw NumericalError("toy: saddle-point QP returned " + to_string(res.status));
    y_star = a.transpose() * res.solution;
    y_star /= y_star.norm();
  }
  saddle_ = {x_star, y_star};
}

Matrix ToyProblem::random_matrix(Index d, Index n, Philox4x32& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix a(d, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < d; ++i) a(i, j) = rng.uniform(-3.0, 3.0);
    if (has_full_row_rank(a)) return a;
  }
  throw NumericalError("toy: could not draw a full-row-rank matrix");
}

Vector ToyProblem::grad_y(const Vector& x, const Vector&) const {
  return a_matrix().transpose() * x.cwiseMax(0.0);
}

Vector ToyProblem::prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace*) const {
  Vector w = a_matrix() * y;
  const double tol = kFeasTol * feas_scale(a_matrix(), y);
  if (w.minCoeff() < -tol) throw InvalidArgument("toy: prox_phi_x needs y in C (Ay >= 0)");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = prox_positive_part_scaled(tau, std::max(w(i), 0.0), x(i));
  return out;
}

Vector ToyProblem::prox_g(double sigma, const Vector& v, ProxWorkspace* ws) const {
  const Vector scaled = v / (1.0 + constants_.nu * sigma);
  return project_polytope(polytope_, scaled, ws != nullptr ? &ws->y_warm : nullptr);
}

bool ToyProblem::in_y_domain(const Vector& y) const {
  if (y.size() != dim_y() || !all_finite(y)) return false;
  return (a_matrix() * y).minCoeff() >= -kFeasTol * feas_scale(a_matrix(), y);
}

double ToyProblem::phi(const Vector& x, const Vector& y) const {
  return x.cwiseMax(0.0).dot(a_matrix() * y);
}

double ToyProblem::g(const Vector& y) const { return 0.5 * constants_.nu * y.squaredNorm(); }

Vector ToyProblem::sample_x(Philox4x32& rng) const {
  Vector x(dim_x());
  for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-5.0, 5.0);
  return x;
}

Vector ToyProblem::sample_y(Philox4x32& rng) const {
  Vector y(dim_y());
  for (Index i = 0; i < y.size(); ++i) y(i) = rng.uniform(-5.0, 5.0);
  return project_polytope(polytope_, y);
}

BilinearProblem::BilinearProblem(Matrix a_matrix, Vector c_lin, double nu) : a_(std::move(a_matrix)), c_(std::move(c_lin)) {
  if (c_.size() != a_.rows()) throw InvalidArgument("bilinear: c must have one entry per row of A");
  if (!(nu >= 0.0)) throw InvalidArgument("bilinear: nu must be nonnegative");
  constants_.l_yx = spectral_norm(a_);
  constants_.nu = nu;
}

Vector BilinearProblem::grad_y(const Vector& x, const Vector&) const { return a_ * x; }

Vector BilinearProblem::prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace*) const {
  return x - tau * (a_.transpose() * y);
}

Vector BilinearProblem::prox_g(double sigma, const Vector& v, ProxWorkspace*) const {
  return (v - sigma * c_) / (1.0 + sigma * constants_.nu);
}

}  // namespace ogaprox
