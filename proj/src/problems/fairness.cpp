#include "ogaprox/problems/fairness.hpp"

#include "ogaprox/prox.hpp"
#include "ogaprox/qp.hpp"

#include <cmath>

namespace ogaprox {

FairnessProblem::FairnessProblem(std::vector<FairnessGroup> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw InvalidArgument("fairness: need at least one group");
  dim_ = groups_.front().features.cols();
  double lsq = 0.0;
  for (const FairnessGroup& grp : groups_) {
    if (grp.features.rows() < 1) throw InvalidArgument("fairness: every group needs at least one sample");
    if (grp.features.cols() != dim_) throw InvalidArgument("fairness: groups disagree on the feature dimension");
    if (grp.labels.size() != grp.features.rows()) throw InvalidArgument("fairness: one label per sample required");
    for (Index j = 0; j < grp.labels.size(); ++j)
      if (grp.labels(j) != 1.0 && grp.labels(j) != -1.0) throw InvalidArgument("fairness: labels must be +1 or -1");
    if (!all_finite(grp.features)) throw InvalidArgument("fairness: non-finite features");
    total_ += grp.features.rows();
    lsq += grp.features.squaredNorm() / static_cast<double>(grp.features.rows());
  }
  signed_rows_.resize(total_, dim_);
  Index row = 0;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const FairnessGroup& grp = groups_[i];
    signed_rows_.middleRows(row, grp.features.rows()) = grp.labels.asDiagonal() * grp.features;
    group_of_.insert(group_of_.end(), static_cast<std::size_t>(grp.features.rows()), static_cast<Index>(i));
    row += grp.features.rows();
  }
  constants_.l_yx = std::sqrt(lsq);
}

Vector FairnessProblem::group_losses(const Vector& x) const {
  const Vector hinge = (1.0 - (signed_rows_ * x).array()).cwiseMax(0.0).matrix();
  Vector out = Vector::Zero(dim_y());
  for (Index j = 0; j < total_; ++j) out(group_of_[static_cast<std::size_t>(j)]) += hinge(j);
  for (Index i = 0; i < dim_y(); ++i) out(i) /= static_cast<double>(groups_[static_cast<std::size_t>(i)].features.rows());
  return out;
}

Vector FairnessProblem::grad_y(const Vector& x, const Vector&) const { return group_losses(x); }

Vector FairnessProblem::prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace* ws) const {
  if (!(tau >= 0.0)) throw InvalidArgument("fairness: tau must be nonnegative");
  if (!in_y_domain(y)) throw InvalidArgument("fairness: prox_phi_x needs y in the simplex");
  if (tau == 0.0) return x;

  const Index d = dim_, n = total_;
  QpProblem qp;
  qp.q_matrix = Matrix::Zero(d + n, d + n);
  qp.q_matrix.topLeftCorner(d, d).setIdentity();
  qp.q_vector.resize(d + n);
  qp.q_vector.head(d) = -x;
  for (Index j = 0; j < n; ++j) {
    const auto i = static_cast<std::size_t>(group_of_[static_cast<std::size_t>(j)]);
    qp.q_vector(d + j) = tau * y(static_cast<Index>(i)) / static_cast<double>(groups_[i].features.rows());
  }
  qp.ineq_matrix = Matrix::Zero(2 * n, d + n);
  qp.ineq_matrix.bottomRightCorner(n, n).setIdentity();
  qp.ineq_matrix.topRightCorner(n, n).setIdentity();
  qp.ineq_matrix.topLeftCorner(n, d) = signed_rows_;
  qp.ineq_vector.resize(2 * n);
  qp.ineq_vector.head(n).setOnes();
  qp.ineq_vector.tail(n).setZero();

  QpWarmStart start;
  start.point.resize(d + n);
  start.point.head(d) = x;
  start.point.tail(n) = (1.0 - (signed_rows_ * x).array()).cwiseMax(0.0).matrix();
  if (ws != nullptr && ws->x_warm.point.size() == d + n) start.working_set = ws->x_warm.working_set;

  QpOptions options;
  options.warm_start = &start;
  const QpResult res = solve_qp(qp, options);
  if (res.status != QpStatus::Optimal) throw NumericalError("fairness: prox QP returned " + to_string(res.status));
  if (ws != nullptr) ws->x_warm = res.warm_start();
  return res.solution.head(d);
}

Vector FairnessProblem::prox_g(double, const Vector& v, ProxWorkspace*) const { return project_simplex(v); }

bool FairnessProblem::in_y_domain(const Vector& y) const {
  if (y.size() != dim_y() || !all_finite(y)) return false;
  return y.minCoeff() >= -1e-8 && std::abs(y.sum() - 1.0) <= 1e-8;
}

Vector FairnessProblem::sample_y(Philox4x32& rng) const {
  Vector y(dim_y());
  for (Index i = 0; i < y.size(); ++i) y(i) = -std::log(1.0 - rng.uniform01());
  return y / y.sum();
}

Vector FairnessProblem::retract_y(const Vector& y) const { return project_simplex(y); }

std::vector<int> predict_linear(const Matrix& features, const Vector& x) {
  const Vector score = features * x;
  std::vector<int> out(static_cast<std::size_t>(score.size()));
  for (Index i = 0; i < score.size(); ++i) out[static_cast<std::size_t>(i)] = score(i) >= 0.0 ? 1 : -1;
  return out;
}

}  // namespace ogaprox
