#pragma once

#include "ogaprox/problem.hpp"
#include "ogaprox/prox.hpp"

namespace ogaprox {

/// Ψ(x, y) = ⟨[x]_+, Ay⟩ − δ_C(y) − (ν/2)‖y‖² with C = {y : Ay ≥ 0}.
///
/// A (d×n) must have full row rank. Then x* = −e together with y* = 0
/// (ν > 0) or any nonzero y* ∈ C (ν = 0) is a saddle point; for ν = 0 we use
/// the unit vector maximizing min_i (Ay)_i.
class ToyProblem : public SaddleProblem {
 public:
  ToyProblem(Matrix a_matrix, double nu);

  /// A with entries uniform on [−3, 3], redrawn until it has full row rank.
  static Matrix random_matrix(Index d, Index n, Philox4x32& rng);

  std::string name() const override { return "toy"; }
  Index dim_x() const override { return polytope_.a_matrix().rows(); }
  Index dim_y() const override { return polytope_.a_matrix().cols(); }
  ProblemConstants constants() const override { return constants_; }

  const Matrix& a_matrix() const { return polytope_.a_matrix(); }
  const PolytopeSet& polytope() const { return polytope_; }
  double nu() const { return constants_.nu; }

  Vector grad_y(const Vector& x, const Vector& y) const override;
  Vector prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace* ws = nullptr) const override;
  Vector prox_g(double sigma, const Vector& v, ProxWorkspace* ws = nullptr) const override;

  bool in_y_domain(const Vector& y) const override;
  bool has_values() const override { return true; }
  double phi(const Vector& x, const Vector& y) const override;
  double g(const Vector& y) const override;

  std::optional<std::pair<Vector, Vector>> saddle_point() const override { return saddle_; }

  Vector sample_x(Philox4x32& rng) const override;
  Vector sample_y(Philox4x32& rng) const override;
  Vector retract_y(const Vector& y) const override { return project_polytope(polytope_, y); }

 private:
  PolytopeSet polytope_;
  ProblemConstants constants_;
  std::pair<Vector, Vector> saddle_;
};

/// Φ(x, y) = ⟨y, Ax⟩ with A of size n×d, and g(y) = (ν/2)‖y‖² + ⟨c, y⟩.
/// prox_{τΦ(·,y)}(x) = x − τAᵀy, so OGAProx with the constant schedule is
/// exactly PDHG on this problem.
class BilinearProblem : public SaddleProblem {
 public:
  BilinearProblem(Matrix a_matrix, Vector c_lin, double nu = 0.0);

  std::string name() const override { return "bilinear"; }
  Index dim_x() const override { return a_.cols(); }
  Index dim_y() const override { return a_.rows(); }
  ProblemConstants constants() const override { return constants_; }
  const Matrix& a_matrix() const { return a_; }
  const Vector& c_lin() const { return c_; }

  Vector grad_y(const Vector& x, const Vector& y) const override;
  Vector prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace* ws = nullptr) const override;
  Vector prox_g(double sigma, const Vector& v, ProxWorkspace* ws = nullptr) const override;

  bool has_values() const override { return true; }
  double phi(const Vector& x, const Vector& y) const override { return y.dot(a_ * x); }
  double g(const Vector& y) const override { return 0.5 * constants_.nu * y.squaredNorm() + c_.dot(y); }

 private:
  Matrix a_;
  Vector c_;
  ProblemConstants constants_;
};

}  // namespace ogaprox
