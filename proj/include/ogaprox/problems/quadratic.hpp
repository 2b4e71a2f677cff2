#pragma once

#include "ogaprox/linalg.hpp"
#include "ogaprox/problem.hpp"

#include <Eigen/LU>

namespace ogaprox {

/// Φ(x, y) = (μ/2)‖x‖² + yᵀAx + bᵀx, g(y) = (ν/2)‖y‖² + cᵀy with A of size
/// n×d and μ, ν > 0. The saddle point solves
///   [μI  Aᵀ; A  −νI] (x; y) = (−b; c).
template <class S>
class QuadraticSCSCT : public SaddleProblemT<S> {
 public:
  using Vec = VectorT<S>;
  using Mat = MatrixT<S>;

  QuadraticSCSCT(Mat a_matrix, Vec b_lin, Vec c_lin, S mu, S nu)
      : a_(std::move(a_matrix)), b_(std::move(b_lin)), c_(std::move(c_lin)) {
    if (b_.size() != a_.cols() || c_.size() != a_.rows()) throw InvalidArgument("quadratic: dimension mismatch");
    if (!(mu > S(0)) || !(nu > S(0))) throw InvalidArgument("quadratic: mu and nu must be positive");
    constants_.mu = mu;
    constants_.nu = nu;
    constants_.l_yy = S(0);
    constants_.l_yx = S(spectral_norm(a_.template cast<double>()));

    const Index d = a_.cols(), n = a_.rows();
    Mat kkt(d + n, d + n);
    kkt.topLeftCorner(d, d) = mu * Mat::Identity(d, d);
    kkt.topRightCorner(d, n) = a_.transpose();
    kkt.bottomLeftCorner(n, d) = a_;
    kkt.bottomRightCorner(n, n) = -nu * Mat::Identity(n, n);
    Vec rhs(d + n);
    rhs << -b_, c_;
    const Vec sol = kkt.partialPivLu().solve(rhs);
    if (!all_finite(sol)) throw NumericalError("quadratic: singular KKT system");
    x_star_ = sol.head(d);
    y_star_ = sol.tail(n);
  }

  /// A with standard normal entries rescaled to spectral norm `norm`, b and c
  /// standard normal.
  static QuadraticSCSCT random(Index d, Index n, S mu, S nu, Philox4x32& rng, double norm = 1.0) {
    Matrix a(n, d);
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < n; ++i) a(i, j) = rng.normal();
    a *= norm / Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
    Vector b(d), c(n);
    for (Index i = 0; i < d; ++i) b(i) = rng.normal();
    for (Index i = 0; i < n; ++i) c(i) = rng.normal();
    return QuadraticSCSCT(a.cast<S>(), b.cast<S>(), c.cast<S>(), mu, nu);
  }

  std::string name() const override { return "quadratic"; }
  Index dim_x() const override { return a_.cols(); }
  Index dim_y() const override { return a_.rows(); }
  ProblemConstantsT<S> constants() const override { return constants_; }
  const Mat& a_matrix() const { return a_; }

  Vec grad_y(const Vec& x, const Vec&) const override { return a_ * x; }
  Vec prox_phi_x(S tau, const Vec& y, const Vec& x, ProxWorkspace* = nullptr) const override {
    return (x - tau * (a_.transpose() * y + b_)) / (S(1) + tau * constants_.mu);
  }
  Vec prox_g(S sigma, const Vec& v, ProxWorkspace* = nullptr) const override {
    return (v - sigma * c_) / (S(1) + sigma * constants_.nu);
  }

  bool has_values() const override { return true; }
  S phi(const Vec& x, const Vec& y) const override {
    return constants_.mu / S(2) * x.squaredNorm() + y.dot(a_ * x) + b_.dot(x);
  }
  S g(const Vec& y) const override { return constants_.nu / S(2) * y.squaredNorm() + c_.dot(y); }

  /// Exact: (μ/2)‖x̄ − x*‖² + (ν/2)‖ȳ − y*‖².
  ExtendedRealT<S> gap(const Vec& x_star, const Vec& y_star, const Vec& x_bar, const Vec& y_bar) const override {
    return ExtendedRealT<S>::finite(constants_.mu / S(2) * (x_bar - x_star).squaredNorm() +
                                    constants_.nu / S(2) * (y_bar - y_star).squaredNorm());
  }

  std::optional<std::pair<Vec, Vec>> saddle_point() const override { return std::make_pair(x_star_, y_star_); }

  /// ‖[μI Aᵀ; A −νI](x*; y*) − (−b; c)‖∞.
  S kkt_residual() const {
    const Vec rx = constants_.mu * x_star_ + a_.transpose() * y_star_ + b_;
    const Vec ry = a_ * x_star_ - constants_.nu * y_star_ - c_;
    const S a = rx.cwiseAbs().maxCoeff(), b = ry.cwiseAbs().maxCoeff();
    return a > b ? a : b;
  }

 private:
  Mat a_;
  Vec b_, c_;
  ProblemConstantsT<S> constants_;
  Vec x_star_, y_star_;
};

using QuadraticSCSC = QuadraticSCSCT<double>;

}  // namespace ogaprox
