#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/qp.hpp"

#include <cstdint>
#include <functional>
#include <limits>

namespace ogaprox {

/// Euclidean projection onto the unit simplex {u ≥ 0, Σu = 1}.
Vector project_simplex(const Vector& v);

/// {y : lower ≤ y ≤ upper, ⟨y, normal⟩ = offset}. Construction throws
/// InfeasibleSet when the set is empty and InvalidArgument on bad data.
class BoxHyperplaneSet {
 public:
  BoxHyperplaneSet(double lower, double upper, Vector normal, double offset = 0.0);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  bool contains(const Vector& y, double tol = 1e-10) const;

 private:
  double lower_;
  double upper_;
  Vector normal_;
  double offset_;
};

/// Projection onto a box ∩ hyperplane by bisection on the scalar multiplier of
/// the hyperplane constraint, finished with an exact solve once the clipping
/// pattern is known. Throws NumericalError if 200 bisection steps do not
/// bring the hyperplane residual below 1e-12 (scaled by max(1, ‖v‖∞)).
Vector project_box_hyperplane(const BoxHyperplaneSet& s, const Vector& v);

/// {y : A y ≥ 0}.
class PolytopeSet {
 public:
  explicit PolytopeSet(Matrix a_matrix);

  const Matrix& a_matrix() const { return a_; }
  bool contains(const Vector& y, double tol = 1e-10) const;

 private:
  friend Vector project_polytope(const PolytopeSet&, const Vector&, QpWarmStart*);
  Matrix a_;
  Matrix gram_;      // A Aᵀ
  Matrix identity_;  // bound rows of the dual problem
};

/// argmin over {Ay ≥ 0} of ½‖y − v‖², through the dual problem
///   min_{λ ≥ 0} ½ λᵀ(AAᵀ)λ + λᵀ(Av),   y = v + Aᵀλ,
/// solved with solve_qp. `warm` (optional) carries the dual point and working
/// set from one call to the next; it is updated in place.
Vector project_polytope(const PolytopeSet& s, const Vector& v, QpWarmStart* warm = nullptr);

/// prox of u ↦ τ·w·max{0, u} at x (w ≥ 0): x if x ≤ 0, 0 if 0 < x ≤ τw,
/// x − τw otherwise.
double prox_positive_part_scaled(double tau, double w, double x);

using ConvexFunction = std::function<ExtendedReal(const Vector&)>;
using Retraction = std::function<Vector(const Vector&)>;

/// Largest decrease of u ↦ f(u) + ½‖u − x‖² found by sampling `trials`
/// points around `candidate` (Gaussian perturbations cycling through scales
/// 1e-3, 1e-1 and 1). Nonpositive (up to rounding) for the exact prox.
/// `retract`, when given, maps each perturbed point back into dom f so that
/// constrained functions are probed at feasible points.
double prox_oracle(const ConvexFunction& f, const Vector& x, const Vector& candidate, int trials,
                   std::uint64_t seed, const Retraction& retract = {});

}  // namespace ogaprox
