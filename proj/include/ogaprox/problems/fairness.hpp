#pragma once

#include "ogaprox/problem.hpp"

#include <vector>

namespace ogaprox {

struct FairnessGroup {
  Matrix features;  // one row per sample
  Vector labels;    // ±1
};

/// Φ(x, y) = Σ_i y_i f_i(x), f_i(x) = (1/n_i) Σ_j max{0, 1 − b_{ij} a_{ij}ᵀx},
/// g = indicator of the probability simplex in R^m.
class FairnessProblem : public SaddleProblem {
 public:
  explicit FairnessProblem(std::vector<FairnessGroup> groups);

  std::string name() const override { return "fairness"; }
  Index dim_x() const override { return dim_; }
  Index dim_y() const override { return static_cast<Index>(groups_.size()); }
  ProblemConstants constants() const override { return constants_; }
  const std::vector<FairnessGroup>& groups() const { return groups_; }

  /// Average hinge loss of each group, (f_1(x), …, f_m(x)).
  Vector group_losses(const Vector& x) const;

  Vector grad_y(const Vector& x, const Vector& y) const override;
  /// Solves the slack QP
  ///   min τΣ_i (y_i/n_i) Σ_j r_ij + ½‖u − x‖²  s.t.  r_ij ≥ 0, r_ij + b_ij a_ijᵀu ≥ 1
  /// from the feasible point u = x, r = max(0, 1 − b aᵀx). The workspace keeps
  /// the working set between calls.
  Vector prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace* ws = nullptr) const override;
  Vector prox_g(double sigma, const Vector& v, ProxWorkspace* ws = nullptr) const override;

  bool in_y_domain(const Vector& y) const override;
  bool has_values() const override { return true; }
  double phi(const Vector& x, const Vector& y) const override { return y.dot(group_losses(x)); }
  double g(const Vector&) const override { return 0.0; }

  Vector sample_y(Philox4x32& rng) const override;
  Vector retract_y(const Vector& y) const override;

 private:
  std::vector<FairnessGroup> groups_;
  Index dim_ = 0;
  Index total_ = 0;
  Matrix signed_rows_;  // row j = b_j a_jᵀ over all groups, stacked
  std::vector<Index> group_of_;
  ProblemConstants constants_;
};

/// Signed predictions sgn(aᵀx) with sgn(0) = +1.
std::vector<int> predict_linear(const Matrix& features, const Vector& x);

}  // namespace ogaprox
