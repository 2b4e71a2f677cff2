#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/problem.hpp"
#include "ogaprox/schedule.hpp"
#include "ogaprox/solver.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace ogaprox {

enum class CertificateKind { GapO1K, GapO1K2, IterateO1K, Linear };

/// A convergence guarantee of the form bound(K) = constant·d0/K^p (or
/// θ^K·d0 for the linear rate, or constant·√d0/K for iterates).
template <class S>
struct RateCertificateT {
  CertificateKind kind = CertificateKind::GapO1K;
  S constant = S(1);
  std::optional<S> theta;
  S d0 = S(0);

  S bound(Index K) const {
    using std::pow;
    using std::sqrt;
    const S k = S(K);
    switch (kind) {
      case CertificateKind::GapO1K:
        return constant * d0 / k;
      case CertificateKind::GapO1K2:
        return constant * d0 / (k * k);
      case CertificateKind::IterateO1K:
        return constant * sqrt(d0) / k;
      case CertificateKind::Linear:
        return pow(*theta, k) * d0;
    }
    return S(0);
  }
};

/// ½‖x* − x₀‖²/τ₀ + ½‖y* − y₀‖²/σ₀.
template <class S>
S initial_distance(const VectorT<S>& x_star, const VectorT<S>& y_star, const VectorT<S>& x0, const VectorT<S>& y0,
                   S tau0, S sigma0) {
  return (x_star - x0).squaredNorm() / (S(2) * tau0) + (y_star - y0).squaredNorm() / (S(2) * sigma0);
}

/// Certificates available for a schedule: O(1/K) gap for the constant
/// schedule; O(1/K²) gap and O(1/K) distance of y_K for the adaptive one;
/// the linear-rate inequality for the linear one.
template <class S>
std::vector<RateCertificateT<S>> rate_certificates(const ScheduleKindT<S>& kind, const ScheduleStateT<S>& initial,
                                                    const ProblemConstantsT<S>& c, S d0) {
  using std::sqrt;
  std::vector<RateCertificateT<S>> out;
  switch (kind.type) {
    case ScheduleType::ConstantCC:
      out.push_back({CertificateKind::GapO1K, S(1), std::nullopt, d0});
      break;
    case ScheduleType::AdaptiveCSC:
      out.push_back({CertificateKind::GapO1K2, S(12) / (c.nu * initial.sigma0), std::nullopt, d0});
      out.push_back({CertificateKind::IterateO1K, sqrt(S(18) / (c.nu * c.nu * initial.sigma0 * initial.delta)),
                     std::nullopt, d0});
      break;
    case ScheduleType::LinearSCSC:
      out.push_back({CertificateKind::Linear, S(1), initial.theta, d0});
      break;
  }
  return out;
}

template <class S>
struct GapCertificateT {
  S gap = S(0);    // Ψ(x̄_K, y*) − Ψ(x*, ȳ_K)
  S bound = S(0);  // d0/T_K, or θ^K·d0 for the linear schedule
  S lhs = S(0);    // gap, or θ·gap + ‖x*−x_K‖²/(2τ) + ‖y*−y_K‖²/(2σ̃)
  S d0 = S(0);

  bool holds(S abs_tol = S(0), S rel_tol = S(0)) const { return lhs <= bound * (S(1) + rel_tol) + abs_tol; }
};

/// Evaluates the gap at the ergodic pair of `result` against the schedule's
/// guarantee. x0/y0 are the starting points of the run. Throws
/// MissingSaddlePoint if the problem has no known saddle point and
/// PsiUndefined if the gap is not finite.
template <class S>
GapCertificateT<S> gap_certificate(const SaddleProblemT<S>& p, const ScheduleKindT<S>& kind,
                                   const ScheduleStateT<S>& initial, const RunResultT<S>& result,
                                   const VectorT<S>& x0, const VectorT<S>& y0) {
  using std::pow;
  const auto saddle = p.saddle_point();
  if (!saddle) throw MissingSaddlePoint(p.name() + ": no known saddle point");
  const Index K = result.state.k;
  if (K < 1) throw InvalidArgument("gap_certificate: need at least one iteration");
  const auto& [xs, ys] = *saddle;
  const ExtendedRealT<S> gap = p.gap(xs, ys, result.state.erg_x, result.state.erg_y);
  if (!gap.is_finite()) throw PsiUndefined(p.name() + ": gap is not finite at the ergodic pair");

  GapCertificateT<S> out;
  out.gap = gap.value;
  if (kind.type == ScheduleType::LinearSCSC) {
    out.d0 = initial_distance<S>(xs, ys, x0, y0, initial.tau, initial.sigma);
    out.bound = pow(initial.theta, S(K)) * out.d0;
    out.lhs = initial.theta * out.gap + (xs - result.state.x_cur).squaredNorm() / (S(2) * initial.tau) +
              (ys - result.state.y_cur).squaredNorm() / (S(2) * initial.sigma_tilde);
  } else {
    out.d0 = initial_distance<S>(xs, ys, x0, y0, initial.tau0, initial.sigma0);
    out.bound = out.d0 / result.schedule.t_sum;
    out.lhs = out.gap;
  }
  return out;
}

}  // namespace ogaprox
