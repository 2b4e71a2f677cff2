#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/problem.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

namespace ogaprox {

enum class ScheduleType { ConstantCC, AdaptiveCSC, LinearSCSC };

inline std::string to_string(ScheduleType t) {
  switch (t) {
    case ScheduleType::ConstantCC:
      return "constant";
    case ScheduleType::AdaptiveCSC:
      return "adaptive";
    case ScheduleType::LinearSCSC:
      return "linear";
  }
  return "unknown";
}

/// Parameter schedule selector.
///   ConstantCC   θ_k = 1, τ_k = τ, σ_k = σ
///   AdaptiveCSC  θ_{k+1} = 1/√(1+νσ_k), τ_{k+1} = τ_k/θ_{k+1}, σ_{k+1} = θ_{k+1}σ_k
///   LinearSCSC   θ fixed, τ = (1−θ)/(μθ), σ = (1−θ)/(νθ)
template <class S>
struct ScheduleKindT {
  ScheduleType type = ScheduleType::ConstantCC;
  S tau = S(0);      // τ, or τ₀ for the adaptive schedule
  S sigma = S(0);    // σ, or σ₀
  S c_alpha = S(0);  // constant/adaptive only
  S theta = S(0);    // linear only
  S alpha = S(0);    // linear only

  static ScheduleKindT constant(S tau, S sigma, S c_alpha) {
    ScheduleKindT k;
    k.type = ScheduleType::ConstantCC;
    k.tau = tau;
    k.sigma = sigma;
    k.c_alpha = c_alpha;
    return k;
  }
  static ScheduleKindT adaptive(S tau0, S sigma0, S c_alpha) {
    ScheduleKindT k = constant(tau0, sigma0, c_alpha);
    k.type = ScheduleType::AdaptiveCSC;
    return k;
  }
  static ScheduleKindT linear(S theta, S alpha) {
    ScheduleKindT k;
    k.type = ScheduleType::LinearSCSC;
    k.theta = theta;
    k.alpha = alpha;
    return k;
  }
};

using ScheduleKind = ScheduleKindT<double>;

template <class S>
struct ScheduleStateT {
  Index k = 0;
  S theta = S(1);   // θ_k
  S tau = S(0);     // τ_k
  S sigma = S(0);   // σ_k
  S t = S(1);       // t_k = τ_k/τ₀ (θ^{-k} for the linear schedule)
  S t_sum = S(0);   // T_k = t_0 + … + t_{k−1}
  S alpha = S(0);   // α_k
  S delta = S(0);   // δ (constant/adaptive); 0 for the linear schedule
  S tau0 = S(0);
  S sigma0 = S(0);
  S c_alpha = S(0);
  S theta_tilde = S(0);  // linear only
  S sigma_tilde = S(0);  // linear only: σ/(1 − θσ(αL_yx + L_yy))
  S ratio = S(0);        // T_k/t_k, drives the ergodic weights without overflow
};

using ScheduleState = ScheduleStateT<double>;

/// Largest admissible σ₀ for the adaptive schedule, (9 + 3√13)/(2ν).
template <class S>
S adaptive_sigma_cap(S nu) {
  using std::sqrt;
  return (S(9) + S(3) * sqrt(S(13))) / (S(2) * nu);
}

/// θ̃(α) = max{L_yx/(αμ + L_yx), (αL_yx + 2L_yy)/(ν + αL_yx + 2L_yy)}.
template <class S>
S theta_tilde(const ProblemConstantsT<S>& c, S alpha) {
  const S first = c.l_yx > S(0) ? c.l_yx / (alpha * c.mu + c.l_yx) : S(0);
  const S num = alpha * c.l_yx + S(2) * c.l_yy;
  const S second = num / (c.nu + num);
  return first > second ? first : second;
}

/// α equalizing the two terms of θ̃ (the first decreases, the second
/// increases in α), found by bisection on log α.
template <class S>
S balanced_alpha(const ProblemConstantsT<S>& c) {
  using std::exp;
  using std::log;
  using std::sqrt;
  if (!(c.mu > S(0)) || !(c.nu > S(0))) throw InvalidArgument("balanced_alpha: need mu > 0 and nu > 0");
  if (c.l_yx == S(0)) return S(1);
  auto diff = [&](S a) {
    const S first = c.l_yx / (a * c.mu + c.l_yx);
    const S num = a * c.l_yx + S(2) * c.l_yy;
    return first - num / (c.nu + num);
  };
  S lo = S(1), hi = S(1);
  while (diff(lo) < S(0)) lo /= S(2);
  while (diff(hi) > S(0)) hi *= S(2);
  S log_lo = log(lo), log_hi = log(hi);
  for (int it = 0; it < 400; ++it) {
    const S mid = (log_lo + log_hi) / S(2);
    if (diff(exp(mid)) > S(0))
      log_lo = mid;
    else
      log_hi = mid;
  }
  return exp((log_lo + log_hi) / S(2));
}

/// Default schedule parameters: c_α = 2L_yx (1 if L_yx = 0), τ₀ = 1/max(L_yx, 1)
/// unless given, σ₀ = 0.9/(c_α L_yx τ₀ + 2L_yy) capped by the adaptive bound
/// when ν > 0; for the linear schedule α balances θ̃ and θ = (1 + θ̃)/2.
template <class S>
ScheduleKindT<S> default_schedule(ScheduleType type, const ProblemConstantsT<S>& c,
                                  std::optional<S> tau0 = std::nullopt) {
  if (type == ScheduleType::LinearSCSC) {
    const S alpha = balanced_alpha(c);
    return ScheduleKindT<S>::linear((S(1) + theta_tilde(c, alpha)) / S(2), alpha);
  }
  const S c_alpha = c.l_yx > S(0) ? S(2) * c.l_yx : S(1);
  const S tau = tau0 ? *tau0 : S(1) / (c.l_yx > S(1) ? c.l_yx : S(1));
  const S denom = c_alpha * c.l_yx * tau + S(2) * c.l_yy;
  S sigma = denom > S(0) ? S(0.9) / denom : S(1);
  if (c.nu > S(0)) {
    const S cap = adaptive_sigma_cap(c.nu);
    if (sigma > cap) sigma = cap;
  }
  return type == ScheduleType::ConstantCC ? ScheduleKindT<S>::constant(tau, sigma, c_alpha)
                                          : ScheduleKindT<S>::adaptive(tau, sigma, c_alpha);
}

namespace detail {

template <class S>
std::string fmt(S v) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<double>(v);
  return os.str();
}

}  // namespace detail

/// Initial schedule state. Throws StepSizeViolation naming the violated
/// condition.
template <class S>
ScheduleStateT<S> make_schedule(const ScheduleKindT<S>& kind, const ProblemConstantsT<S>& c) {
  using detail::fmt;
  c.validate();
  ScheduleStateT<S> s;
  if (kind.type == ScheduleType::LinearSCSC) {
    if (!(c.mu > S(0))) throw StepSizeViolation("linear schedule requires mu > 0");
    if (!(c.nu > S(0))) throw StepSizeViolation("linear schedule requires nu > 0");
    if (!(kind.alpha > S(0))) throw StepSizeViolation("linear schedule requires alpha > 0");
    const S tt = theta_tilde(c, kind.alpha);
    if (!(kind.theta > tt))
      throw StepSizeViolation("linear schedule requires theta > theta_tilde (theta = " + fmt(kind.theta) +
                              ", theta_tilde = " + fmt(tt) + ")");
    if (!(kind.theta < S(1))) throw StepSizeViolation("linear schedule requires theta < 1");
    s.theta = kind.theta;
    s.tau = (S(1) - kind.theta) / (c.mu * kind.theta);
    s.sigma = (S(1) - kind.theta) / (c.nu * kind.theta);
    const S margin = S(1) - kind.theta * s.sigma * (kind.alpha * c.l_yx + c.l_yy);
    if (!(margin > S(0))) throw StepSizeViolation("linear schedule requires 1 - theta*sigma*(alpha*L_yx + L_yy) > 0");
    s.sigma_tilde = s.sigma / margin;
    s.theta_tilde = tt;
    s.alpha = kind.alpha;
    s.tau0 = s.tau;
    s.sigma0 = s.sigma;
    s.delta = S(0);
    return s;
  }

  const bool adaptive = kind.type == ScheduleType::AdaptiveCSC;
  if (!(kind.tau > S(0)) || !(kind.sigma > S(0))) throw StepSizeViolation("step sizes tau and sigma must be positive");
  if (!(kind.c_alpha > c.l_yx))
    throw StepSizeViolation("c_alpha must exceed L_yx (c_alpha = " + fmt(kind.c_alpha) + ", L_yx = " + fmt(c.l_yx) + ")");
  const S product = (kind.c_alpha * c.l_yx * kind.tau + S(2) * c.l_yy) * kind.sigma;
  if (!(product < S(1)))
    throw StepSizeViolation("step-size product condition (c_alpha*L_yx*tau + 2*L_yy)*sigma < 1 violated (value " +
                            fmt(product) + ")");
  if (adaptive) {
    if (!(c.nu > S(0))) throw StepSizeViolation("adaptive schedule requires nu > 0");
    const S cap = adaptive_sigma_cap(c.nu);
    if (!(kind.sigma <= cap))
      throw StepSizeViolation("adaptive schedule requires sigma0 <= (9 + 3*sqrt(13))/(2*nu) = " + fmt(cap));
  }
  s.theta = S(1);
  s.tau = kind.tau;
  s.sigma = kind.sigma;
  s.tau0 = kind.tau;
  s.sigma0 = kind.sigma;
  s.c_alpha = kind.c_alpha;
  s.alpha = kind.c_alpha * kind.tau;
  const S d1 = S(1) - c.l_yx / kind.c_alpha;
  const S d2 = S(1) - product;
  s.delta = d1 < d2 ? d1 : d2;
  return s;
}

/// Moves the schedule from iteration k to k + 1.
template <class S>
ScheduleStateT<S> schedule_advance(const ScheduleStateT<S>& s, const ScheduleKindT<S>& kind,
                                   const ProblemConstantsT<S>& c) {
  using std::pow;
  using std::sqrt;
  ScheduleStateT<S> n = s;
  n.k = s.k + 1;
  n.t_sum = s.t_sum + s.t;
  S theta_next = S(1);
  switch (kind.type) {
    case ScheduleType::ConstantCC:
      n.alpha = s.c_alpha * s.tau;
      break;
    case ScheduleType::AdaptiveCSC:
      theta_next = S(1) / sqrt(S(1) + c.nu * s.sigma);
      n.theta = theta_next;
      n.tau = s.tau / theta_next;
      n.sigma = theta_next * s.sigma;
      n.alpha = s.c_alpha * s.tau;
      n.t = n.tau / s.tau0;
      break;
    case ScheduleType::LinearSCSC:
      theta_next = s.theta;
      n.t = pow(s.theta, -S(n.k));
      break;
  }
  // T_{k+1}/t_{k+1} = (T_k/t_k + 1)·t_k/t_{k+1} and t_k/t_{k+1} = θ_{k+1}.
  n.ratio = (s.ratio + S(1)) * theta_next;
  return n;
}

}  // namespace ogaprox
