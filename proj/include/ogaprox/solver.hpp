#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/problem.hpp"
#include "ogaprox/schedule.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ogaprox {

template <class S>
struct SolverStateT {
  using Vec = VectorT<S>;
  Vec x_cur, x_prev;
  Vec y_cur, y_prev;
  Vec grad_prev;  // ∇_yΦ(x_{k−1}, y_{k−1})
  Vec erg_x, erg_y;  // x̄_k, ȳ_k (weighted by t_i, kept normalized)
  Index k = 0;

  const Vec& ergodic_x() const { return erg_x; }
  const Vec& ergodic_y() const { return erg_y; }
};

using SolverState = SolverStateT<double>;

/// State at k = 0 with x_{−1} = x₀ and y_{−1} = y₀. The ergodic averages are
/// undefined before the first step and start at (x₀, y₀).
template <class S>
SolverStateT<S> init_state(const SaddleProblemT<S>& p, const VectorT<S>& x0, const VectorT<S>& y0) {
  if (x0.size() != p.dim_x() || y0.size() != p.dim_y()) throw InvalidArgument("initial point has wrong dimensions");
  if (!p.in_x_domain(x0)) throw InvalidArgument(p.name() + ": x0 is outside the domain of Phi");
  if (!p.in_y_domain(y0)) throw InvalidArgument(p.name() + ": y0 is outside dom g");
  SolverStateT<S> s;
  s.x_cur = s.x_prev = x0;
  s.y_cur = s.y_prev = y0;
  s.grad_prev = p.grad_y(x0, y0);
  s.erg_x = x0;
  s.erg_y = y0;
  return s;
}

/// One OGAProx iteration with the parameters of `sched` (which must describe
/// iteration s.k):
///   v       = y_k + σ_k((1+θ_k)∇_yΦ(x_k,y_k) − θ_k∇_yΦ(x_{k−1},y_{k−1}))
///   y_{k+1} = prox_{σ_k g}(v)
///   x_{k+1} = prox_{τ_k Φ(·,y_{k+1})}(x_k)
/// Throws NonFiniteIterate if an iterate has a NaN/Inf coordinate.
template <class S>
SolverStateT<S> step(const SaddleProblemT<S>& p, const SolverStateT<S>& s, const ScheduleStateT<S>& sched,
                     ProxWorkspace* ws = nullptr) {
  using Vec = VectorT<S>;
  const Vec g_cur = p.grad_y(s.x_cur, s.y_cur);
  const Vec v = s.y_cur + sched.sigma * ((S(1) + sched.theta) * g_cur - sched.theta * s.grad_prev);
  Vec y_next = p.prox_g(sched.sigma, v, ws);
  if (!all_finite(y_next)) throw NonFiniteIterate(p.name() + ": non-finite y at iteration " + std::to_string(s.k + 1));
  Vec x_next = p.prox_phi_x(sched.tau, y_next, s.x_cur, ws);
  if (!all_finite(x_next)) throw NonFiniteIterate(p.name() + ": non-finite x at iteration " + std::to_string(s.k + 1));

  SolverStateT<S> n;
  n.k = s.k + 1;
  n.grad_prev = g_cur;
  n.x_prev = s.x_cur;
  n.y_prev = s.y_cur;
  // x̄_{k+1} = (T_k x̄_k + t_k x_{k+1})/T_{k+1}; the weight t_k/T_{k+1} equals
  // 1/(1 + T_k/t_k).
  const S w = S(1) / (S(1) + sched.ratio);
  if (s.k == 0) {
    n.erg_x = x_next;
    n.erg_y = y_next;
  } else {
    n.erg_x = s.erg_x + w * (x_next - s.erg_x);
    n.erg_y = s.erg_y + w * (y_next - s.erg_y);
  }
  n.x_cur = std::move(x_next);
  n.y_cur = std::move(y_next);
  return n;
}

template <class S>
struct IterationRecordT {
  Index k = 0;  // index of the new iterate
  S theta = S(0), tau = S(0), sigma = S(0), t = S(0);
  S dx = S(0);  // ‖x_k − x_{k−1}‖
  S dy = S(0);  // ‖y_k − y_{k−1}‖
};

template <class S>
struct RunReportT {
  std::vector<IterationRecordT<S>> iterations;
  bool aborted = false;
  std::string abort_reason;
};

/// Read-only view handed to metric hooks after every iteration.
template <class S>
struct IterationViewT {
  const SaddleProblemT<S>& problem;
  const SolverStateT<S>& state;      // after the step (state.k = new index)
  const ScheduleStateT<S>& schedule;  // parameters of the next step
  const IterationRecordT<S>& record;
};

template <class S>
using MetricHookT = std::function<void(const IterationViewT<S>&)>;

template <class S>
struct RunResultT {
  SolverStateT<S> state;
  ScheduleStateT<S> schedule;  // describes iteration state.k
  RunReportT<S> report;
};

/// Runs max_iter iterations from (x0, y0). A NonFiniteIterate stops the run
/// and is recorded in the report; other errors propagate.
template <class S>
RunResultT<S> run(const SaddleProblemT<S>& p, const ScheduleKindT<S>& kind, const VectorT<S>& x0,
                  const VectorT<S>& y0, Index max_iter, const std::vector<MetricHookT<S>>& hooks = {},
                  ProxWorkspace* ws = nullptr) {
  if (max_iter < 0) throw InvalidArgument("max_iter must be nonnegative");
  const ProblemConstantsT<S> c = p.constants();
  RunResultT<S> r;
  r.schedule = make_schedule(kind, c);
  r.state = init_state(p, x0, y0);
  ProxWorkspace local;
  if (ws == nullptr) ws = &local;
  r.report.iterations.reserve(static_cast<std::size_t>(max_iter));
  for (Index it = 0; it < max_iter; ++it) {
    SolverStateT<S> next;
    try {
      next = step(p, r.state, r.schedule, ws);
    } catch (const NonFiniteIterate& e) {
      r.report.aborted = true;
      r.report.abort_reason = e.what();
      break;
    }
    IterationRecordT<S> rec;
    rec.k = next.k;
    rec.theta = r.schedule.theta;
    rec.tau = r.schedule.tau;
    rec.sigma = r.schedule.sigma;
    rec.t = r.schedule.t;
    rec.dx = (next.x_cur - next.x_prev).norm();
    rec.dy = (next.y_cur - next.y_prev).norm();
    r.state = std::move(next);
    r.schedule = schedule_advance(r.schedule, kind, c);
    r.report.iterations.push_back(rec);
    for (const auto& hook : hooks) hook(IterationViewT<S>{p, r.state, r.schedule, r.report.iterations.back()});
  }
  return r;
}

}  // namespace ogaprox
