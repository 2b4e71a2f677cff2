#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/qp.hpp"
#include "ogaprox/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace ogaprox {

template <class S>
struct ProblemConstantsT {
  S l_yx = S(0);  // Lipschitz constant of ∇_yΦ in x
  S l_yy = S(0);  // Lipschitz constant of ∇_yΦ in y
  S mu = S(0);    // strong convexity of Φ(·, y)
  S nu = S(0);    // strong convexity of g

  void validate() const {
    if (!(l_yx >= S(0)) || !(l_yy >= S(0)) || !(mu >= S(0)) || !(nu >= S(0)))
      throw InvalidArgument("problem constants must be nonnegative");
  }
};

using ProblemConstants = ProblemConstantsT<double>;

/// Scratch state carried from one prox call to the next within a single run
/// (QP warm starts). Problem objects stay immutable; every run owns its own.
struct ProxWorkspace {
  QpWarmStart x_warm;
  QpWarmStart y_warm;
};

/// min_x max_y Ψ(x,y) = Φ(x,y) − g(y).
///
/// Implementations provide ∇_yΦ, the two proximal maps and the constants.
/// Function values, samplers and a known saddle point are optional and only
/// used for validation and gap reporting.
template <class S>
class SaddleProblemT {
 public:
  using Scalar = S;
  using Vec = VectorT<S>;
  using Value = ExtendedRealT<S>;

  virtual ~SaddleProblemT() = default;

  virtual std::string name() const = 0;
  virtual Index dim_x() const = 0;
  virtual Index dim_y() const = 0;
  virtual ProblemConstantsT<S> constants() const = 0;

  virtual Vec grad_y(const Vec& x, const Vec& y) const = 0;
  /// argmin_u τΦ(u, y) + ½‖u − x‖².
  virtual Vec prox_phi_x(S tau, const Vec& y, const Vec& x, ProxWorkspace* ws = nullptr) const = 0;
  /// argmin_w σg(w) + ½‖w − v‖².
  virtual Vec prox_g(S sigma, const Vec& v, ProxWorkspace* ws = nullptr) const = 0;

  /// x ∈ pr(dom Φ) and y ∈ dom g, up to a small feasibility tolerance.
  virtual bool in_x_domain(const Vec& x) const { return x.size() == dim_x() && all_finite(x); }
  virtual bool in_y_domain(const Vec& y) const { return y.size() == dim_y() && all_finite(y); }

  virtual bool has_values() const { return false; }
  /// Φ(x, y) for x ∈ pr(dom Φ), y ∈ dom g.
  virtual S phi(const Vec&, const Vec&) const { throw PsiUndefined(name() + ": function values not available"); }
  /// g(y) for y ∈ dom g.
  virtual S g(const Vec&) const { throw PsiUndefined(name() + ": function values not available"); }

  /// Ψ(x, y) = Φ(x, y) − g(y) with Ψ = +∞ off pr(dom Φ) and Ψ = −∞ off dom g.
  Value psi_value(const Vec& x, const Vec& y) const {
    if (!in_x_domain(x)) return Value::plus_inf();
    if (!in_y_domain(y)) return Value::minus_inf();
    return Value::finite(phi(x, y) - g(y));
  }

  /// Ψ(x̄, y*) − Ψ(x*, ȳ). Problems with a closed form override this to
  /// avoid cancellation.
  virtual Value gap(const Vec& x_star, const Vec& y_star, const Vec& x_bar, const Vec& y_bar) const {
    return psi_value(x_bar, y_star) - psi_value(x_star, y_bar);
  }

  virtual std::optional<std::pair<Vec, Vec>> saddle_point() const { return std::nullopt; }

  /// Random points of pr(dom Φ) and dom g for validation.
  virtual Vec sample_x(Philox4x32& rng) const {
    Vec x(dim_x());
    for (Index i = 0; i < x.size(); ++i) x(i) = S(rng.normal());
    return x;
  }
  virtual Vec sample_y(Philox4x32& rng) const {
    Vec y(dim_y());
    for (Index i = 0; i < y.size(); ++i) y(i) = S(rng.normal());
    return y;
  }
  /// Maps arbitrary points back into the domains (used by the prox oracles).
  virtual Vec retract_x(const Vec& x) const { return x; }
  virtual Vec retract_y(const Vec& y) const { return y; }
};

using SaddleProblem = SaddleProblemT<double>;

struct ValidationReport {
  std::string problem;
  int trials = 0;
  double lipschitz_violation = 0.0;  // max of (lhs − rhs)/rhs over sampled pairs
  double prox_x_violation = 0.0;     // max prox-oracle decrease for prox_phi_x
  double prox_g_violation = 0.0;     // max prox-oracle decrease for prox_g
  bool prox_checked = false;         // false when the problem exposes no values

  bool passed(double tol = 1e-8) const {
    return lipschitz_violation <= tol && (!prox_checked || (prox_x_violation <= tol && prox_g_violation <= tol));
  }
};

/// Spot-checks the Lipschitz bound on ∇_yΦ over `trials` random feasible
/// pairs and the two proximal maps with prox_oracle over `trials` random
/// (step, point) triples. Violations are reported, not thrown.
ValidationReport validate_problem(const SaddleProblem& p, int trials, std::uint64_t seed);

}  // namespace ogaprox
