#pragma once

#include "ogaprox/problem.hpp"
#include "ogaprox/prox.hpp"

#include <vector>

namespace ogaprox {

enum class KernelType { Polynomial, Gaussian, Linear };

std::string to_string(KernelType k);

/// Kernel matrix over the rows of `points`:
///   Polynomial (1 + aᵀa')², Gaussian exp(−5‖a − a'‖²), Linear aᵀa'.
Matrix kernel_matrix(KernelType type, const Matrix& points);

/// K ← D^{-1/2} K D^{-1/2} with D = diag(K), so every diagonal entry is 1.
/// Throws InvalidArgument if a diagonal entry is not positive.
Matrix normalize_kernel(const Matrix& k);

/// min_{x ∈ Δ} max_{y ∈ Y} (μ/2)‖x‖² − ½Σ x_i yᵀM_iy + eᵀy − (ν/2)‖y‖²
/// with Y = {0 ≤ y ≤ C, ⟨y, b⟩ = 0}.
class MkSvmProblem : public SaddleProblem {
 public:
  MkSvmProblem(std::vector<Matrix> m_list, Vector labels, double mu, double nu, double box_c);

  /// Builds M_i = (c/r_i)·diag(b)K_i^{tr}diag(b) from full (train + test)
  /// kernel matrices, with r_i = tr(K_i) and c = Σ r_i.
  static MkSvmProblem from_kernels(const std::vector<Matrix>& kernels, const std::vector<Index>& train,
                                   const Vector& train_labels, double mu, double nu, double box_c);

  std::string name() const override { return "mksvm"; }
  Index dim_x() const override { return static_cast<Index>(m_.size()); }
  Index dim_y() const override { return b_.size(); }
  ProblemConstants constants() const override { return constants_; }

  const std::vector<Matrix>& m_list() const { return m_; }
  const Vector& labels() const { return b_; }
  double box_c() const { return set_.upper(); }

  Vector grad_y(const Vector& x, const Vector& y) const override;
  Vector prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace* ws = nullptr) const override;
  Vector prox_g(double sigma, const Vector& v, ProxWorkspace* ws = nullptr) const override;

  bool in_x_domain(const Vector& x) const override;
  bool in_y_domain(const Vector& y) const override;
  bool has_values() const override { return true; }
  double phi(const Vector& x, const Vector& y) const override;
  double g(const Vector& y) const override { return 0.5 * constants_.nu * y.squaredNorm(); }

  Vector sample_x(Philox4x32& rng) const override;
  Vector sample_y(Philox4x32& rng) const override;
  Vector retract_x(const Vector& x) const override { return project_simplex(x); }
  Vector retract_y(const Vector& y) const override { return project_box_hyperplane(set_, y); }

 private:
  std::vector<Matrix> m_;
  Vector b_;
  BoxHyperplaneSet set_;
  ProblemConstants constants_;
};

struct MkSvmPrediction {
  std::vector<int> labels;  // ±1 per test index
  Index j0 = -1;            // position (within train) of the support vector used for γ
  double gamma = 0.0;
  bool fallback = false;    // no α_j strictly inside the band [1e-4·C, C − 1e-4·C]
};

/// L(a_k) = sgn(Σ_i b_iα_iK*_{ik} + γ), γ = b_{j0}(1 − να_{j0}) − Σ_i b_iα_iK*_{ij0},
/// K* = Σ_j η_jK_j, sgn(0) = +1. j0 is the smallest α_j inside the band
/// [1e-4·C, C − 1e-4·C] (lowest index on ties): before convergence the large
/// α_j belong to margin violators, the small in-band ones to points on the
/// margin. With an empty band this throws NoActiveSupportVector unless
/// `allow_fallback`, in which case j0 = argmax_j min(α_j, C − α_j).
MkSvmPrediction mksvm_predict(const std::vector<Matrix>& kernels, const std::vector<Index>& train,
                              const Vector& train_labels, const std::vector<Index>& test, const Vector& alpha,
                              const Vector& eta, double nu, double box_c, bool allow_fallback = true);

/// η_i = c·x_i/r_i for the trace-normalized kernels.
Vector mksvm_eta(const std::vector<Matrix>& kernels, const Vector& x);

}  // namespace ogaprox
