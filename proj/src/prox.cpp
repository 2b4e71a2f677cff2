#include "ogaprox/prox.hpp"

#include "ogaprox/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace ogaprox {

Vector project_simplex(const Vector& v) {
  if (v.size() == 0) throw InvalidArgument("project_simplex: empty input");
  if (!all_finite(v)) throw InvalidArgument("project_simplex: non-finite input");
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) threshold = t;
  }
  return (v.array() - threshold).cwiseMax(0.0).matrix();
}

BoxHyperplaneSet::BoxHyperplaneSet(double lower, double upper, Vector normal, double offset)
    : lower_(lower), upper_(upper), normal_(std::move(normal)), offset_(offset) {
  if (!(lower_ < upper_) || std::isnan(lower_) || std::isinf(lower_))
    throw InvalidArgument("BoxHyperplaneSet: need finite lower < upper");
  if (normal_.size() == 0 || !all_finite(normal_) || normal_.cwiseAbs().maxCoeff() == 0.0)
    throw InvalidArgument("BoxHyperplaneSet: normal must be a nonzero finite vector");
  if (!std::isfinite(offset_)) throw InvalidArgument("BoxHyperplaneSet: offset must be finite");
  // Range of ⟨y, normal⟩ over the box.
  double lo = 0.0, hi = 0.0;
  for (Index i = 0; i < normal_.size(); ++i) {
    const double a = normal_(i);
    if (a > 0.0) {
      lo += a * lower_;
      hi += a * upper_;
    } else if (a < 0.0) {
      lo += a * upper_;
      hi += a * lower_;
    }
  }
  if (offset_ < lo - 1e-12 * std::max(1.0, std::abs(lo)) || offset_ > hi + 1e-12 * std::max(1.0, std::abs(hi)))
    throw InfeasibleSet("BoxHyperplaneSet: hyperplane misses the box");
}

bool BoxHyperplaneSet::contains(const Vector& y, double tol) const {
  if (y.size() != normal_.size()) return false;
  if (y.minCoeff() < lower_ - tol) return false;
  if (std::isfinite(upper_) && y.maxCoeff() > upper_ + tol) return false;
  return std::abs(y.dot(normal_) - offset_) <= tol * std::max(1.0, y.cwiseAbs().maxCoeff());
}

namespace {

Vector clip(const BoxHyperplaneSet& s, const Vector& v, double lambda) {
  return (v - lambda * s.normal()).cwiseMax(s.lower()).cwiseMin(s.upper());
}

}  // namespace

Vector project_box_hyperplane(const BoxHyperplaneSet& s, const Vector& v) {
  if (v.size() != s.normal().size()) throw InvalidArgument("project_box_hyperplane: dimension mismatch");
  if (!all_finite(v)) throw InvalidArgument("project_box_hyperplane: non-finite input");
  const Vector& a = s.normal();
  const double tol = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  // h(λ) = ⟨a, clip(v − λa)⟩ − offset is continuous and nonincreasing.
  auto h = [&](double lambda) { return a.dot(clip(s, v, lambda)) - s.offset(); };

  double h0 = h(0.0);
  if (std::abs(h0) <= tol) return clip(s, v, 0.0);

  // Bracket the root.
  double lo = 0.0, hi = 0.0;
  // |h'| ≤ ‖a‖², so the root lies at least |h(0)|/‖a‖² away from 0.
  const double step = std::abs(h0) / a.squaredNorm();
  if (h0 > 0.0) {
    hi = step;
    while (h(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw NumericalError("project_box_hyperplane: cannot bracket multiplier");
    }
  } else {
    lo = -step;
    while (h(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
      if (!std::isfinite(lo)) throw NumericalError("project_box_hyperplane: cannot bracket multiplier");
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    // Exact solve on the clipping pattern at mid: coordinates strictly inside
    // the box move linearly with λ.
    const Vector w = v - mid * a;
    double fixed = 0.0, free_dot = 0.0, free_norm = 0.0;
    for (Index i = 0; i < v.size(); ++i) {
      if (w(i) <= s.lower()) {
        fixed += a(i) * s.lower();
      } else if (w(i) >= s.upper()) {
        fixed += a(i) * s.upper();
      } else {
        free_dot += a(i) * v(i);
        free_norm += a(i) * a(i);
      }
    }
    if (free_norm > 0.0) {
      const double lambda = (free_dot + fixed - s.offset()) / free_norm;
      if (lambda >= lo && lambda <= hi) {
        const Vector y = clip(s, v, lambda);
        if (std::abs(a.dot(y) - s.offset()) <= tol) return y;
      }
    }
    const double hm = h(mid);
    if (std::abs(hm) <= tol) return clip(s, v, mid);
    if (hm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  throw NumericalError("project_box_hyperplane: bisection did not converge in 200 steps");
}

PolytopeSet::PolytopeSet(Matrix a_matrix) : a_(std::move(a_matrix)) {
  if (a_.rows() == 0 || a_.cols() == 0) throw InvalidArgument("PolytopeSet: empty matrix");
  if (!all_finite(a_.reshaped())) throw InvalidArgument("PolytopeSet: non-finite matrix");
  gram_ = a_ * a_.transpose();
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();
  identity_ = Matrix::Identity(a_.rows(), a_.rows());
}

bool PolytopeSet::contains(const Vector& y, double tol) const {
  if (y.size() != a_.cols()) return false;
  return (a_ * y).minCoeff() >= -tol * std::max(1.0, y.cwiseAbs().maxCoeff());
}

Vector project_polytope(const PolytopeSet& s, const Vector& v, QpWarmStart* warm) {
  if (v.size() != s.a_.cols()) throw InvalidArgument("project_polytope: dimension mismatch");
  if (!all_finite(v)) throw InvalidArgument("project_polytope: non-finite input");
  const Vector av = s.a_ * v;
  if (av.minCoeff() >= 0.0) {
    if (warm != nullptr) *warm = QpWarmStart{};
    return v;
  }
  QpProblem dual;
  dual.q_matrix = s.gram_;
  dual.q_vector = av;
  dual.ineq_matrix = s.identity_;
  dual.ineq_vector = Vector::Zero(s.a_.rows());
  QpOptions options;
  if (warm != nullptr && warm->point.size() == s.a_.rows()) options.warm_start = warm;
  const QpResult res = solve_qp(dual, options);
  if (res.status != QpStatus::Optimal)
    throw NumericalError("project_polytope: dual QP returned " + to_string(res.status));
  if (warm != nullptr) *warm = res.warm_start();
  return v + s.a_.transpose() * res.solution;
}

double prox_positive_part_scaled(double tau, double w, double x) {
  if (!(tau >= 0.0)) throw InvalidArgument("prox_positive_part_scaled: tau must be nonnegative");
  if (w < 0.0) throw InvalidArgument("prox_positive_part_scaled: weight must be nonnegative");
  if (x <= 0.0) return x;
  if (x <= tau * w) return 0.0;
  return x - tau * w;
}

double prox_oracle(const ConvexFunction& f, const Vector& x, const Vector& candidate, int trials,
                   std::uint64_t seed, const Retraction& retract) {
  if (trials <= 0) throw InvalidArgument("prox_oracle: trials must be positive");
  if (x.size() != candidate.size()) throw InvalidArgument("prox_oracle: dimension mismatch");
  auto objective = [&](const Vector& u) {
    const ExtendedReal fu = f(u);
    if (fu.is_minus_inf()) throw InvalidArgument("prox_oracle: function takes the value -inf");
    return fu + ExtendedReal::finite(0.5 * (u - x).squaredNorm());
  };
  const ExtendedReal base = objective(candidate);
  if (base.is_plus_inf()) return std::numeric_limits<double>::infinity();
  static constexpr double kScales[3] = {1e-3, 1e-1, 1.0};
  Philox4x32 rng(seed, stream_id("prox_oracle"));
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Vector u = candidate;
    const double scale = kScales[t % 3];
    for (Index i = 0; i < u.size(); ++i) u(i) += scale * rng.normal();
    if (retract) u = retract(u);
    const ExtendedReal value = objective(u);
    if (value.is_plus_inf()) continue;
    worst = std::max(worst, base.value - value.value);
  }
  return worst;
}

}  // namespace ogaprox
