#include "ogaprox/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace ogaprox {

double spectral_norm(const Matrix& a, const SpectralNormOptions& options) {
  if (a.size() == 0) return 0.0;
  const Index n = a.cols();
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = 1.0 + static_cast<double>(i) / static_cast<double>(n);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < options.max_iter; ++it) {
    const Vector av = a * v;
    Vector w = a.transpose() * av;
    const double norm_w = w.norm();
    if (norm_w == 0.0) {
      estimate = 0.0;
      break;
    }
    const double next = std::sqrt(norm_w);  // ‖AᵀAv‖ with ‖v‖ = 1 → σ² estimate
    v = w / norm_w;
    const bool converged = std::abs(next - estimate) <= options.rel_tol * next;
    estimate = next;
    if (converged) break;
  }
  // Rayleigh quotient at the final vector is the tighter estimate from below;
  // the AᵀA growth ratio bounds it from above, so take the larger one.
  const double rayleigh = (a * v).norm();
  return std::max(estimate, rayleigh) * options.inflation;
}

bool has_full_row_rank(const Matrix& a, double rel_tol) {
  if (a.rows() > a.cols()) return false;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return false;
  return s(s.size() - 1) > rel_tol * s(0);
}

}  // namespace ogaprox
