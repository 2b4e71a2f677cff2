#include "ogaprox/certificate.hpp"
#include "ogaprox/harness/experiments.hpp"
#include "ogaprox/problems/quadratic.hpp"
#include "ogaprox/solver.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <chrono>
#include <sstream>

namespace ogaprox {

namespace {

using boost::multiprecision::float128;

template <class S>
ScheduleKindT<S> cast_kind(const ScheduleKind& k) {
  ScheduleKindT<S> out;
  out.type = k.type;
  out.tau = S(k.tau);
  out.sigma = S(k.sigma);
  out.c_alpha = S(k.c_alpha);
  out.theta = S(k.theta);
  out.alpha = S(k.alpha);
  return out;
}

template <class S>
ProblemConstants to_double(const ProblemConstantsT<S>& c) {
  return {static_cast<double>(c.l_yx), static_cast<double>(c.l_yy), static_cast<double>(c.mu),
          static_cast<double>(c.nu)};
}

template <class S>
Report synthetic_run(const Config& cfg, std::uint64_t seed) {
  using Vec = VectorT<S>;
  const auto t0 = std::chrono::steady_clock::now();
  const Index d = cfg.get_int("d", 40), n = cfg.get_int("n", 40);
  const double mu = cfg.get_double("mu", 1.0), nu = cfg.get_double("nu", 1.0), norm = cfg.get_double("norm", 1.0);
  const Index iterations = cfg.get_int("iterations", 500);
  if (d < 1 || n < 1 || iterations < 1) throw InvalidArgument("synthetic: d, n and iterations must be positive");

  Philox4x32 rng(seed, stream_id("synthetic"));
  const QuadraticSCSCT<S> p = QuadraticSCSCT<S>::random(d, n, S(mu), S(nu), rng, norm);
  Vec x0(d), y0(n);
  for (Index i = 0; i < d; ++i) x0(i) = S(rng.normal());
  for (Index i = 0; i < n; ++i) y0(i) = S(rng.normal());

  // Step sizes are chosen in double (they only need to satisfy the
  // conditions, which make_schedule re-checks in S).
  const ScheduleKind kind_d = schedule_from_config(cfg, ScheduleType::LinearSCSC, to_double(p.constants()));
  const ScheduleKindT<S> kind = cast_kind<S>(kind_d);
  const ScheduleStateT<S> initial = make_schedule(kind, p.constants());
  const auto [xs, ys] = *p.saddle_point();

  Report rep;
  rep.label = "synthetic";
  rep.config = {{"experiment", "synthetic"},          {"d", std::to_string(d)},
                {"n", std::to_string(n)},              {"iterations", std::to_string(iterations)},
                {"seed", std::to_string(seed)},        {"precision", cfg.get_string("precision", "float128")}};
  {
    std::ostringstream v;
    v << mu;
    rep.config["mu"] = v.str();
    v.str("");
    v << nu;
    rep.config["nu"] = v.str();
  }
  rep.config["schedule"] = to_string(kind_d.type);
  rep.summary = {{"l_yx", static_cast<double>(p.constants().l_yx)},
                 {"kkt_residual", static_cast<double>(p.kkt_residual())}};
  if (kind.type == ScheduleType::LinearSCSC) {
    rep.summary["theta"] = static_cast<double>(initial.theta);
    rep.summary["theta_tilde"] = static_cast<double>(initial.theta_tilde);
    rep.summary["alpha"] = static_cast<double>(initial.alpha);
    rep.summary["sigma_tilde"] = static_cast<double>(initial.sigma_tilde);
  }
  const S d0 = initial_distance<S>(xs, ys, x0, y0, initial.tau0, initial.sigma0);
  rep.summary["d0"] = static_cast<double>(d0);

  std::vector<MetricHookT<S>> hooks{[&](const IterationViewT<S>& v) {
    MetricRecord rec;
    rec.k = v.state.k;
    const S gap = p.gap(xs, ys, v.state.erg_x, v.state.erg_y).value;
    const S dx2 = (v.state.x_cur - xs).squaredNorm(), dy2 = (v.state.y_cur - ys).squaredNorm();
    rec.gap = static_cast<double>(gap);
    rec.dist_x = static_cast<double>(sqrt(dx2));
    rec.dist_y = static_cast<double>(sqrt(dy2));
    rec.theta = static_cast<double>(v.record.theta);
    rec.tau = static_cast<double>(v.record.tau);
    rec.sigma = static_cast<double>(v.record.sigma);
    if (kind.type == ScheduleType::LinearSCSC) {
      const S bound = pow(initial.theta, S(rec.k)) * d0;
      const S dist_part = dx2 / (S(2) * initial.tau) + dy2 / (S(2) * initial.sigma_tilde);
      rec.extra["bound"] = static_cast<double>(bound);
      rec.extra["lhs"] = static_cast<double>(initial.theta * gap + dist_part);
      rec.extra["dist_part"] = static_cast<double>(dist_part);
      // Ratios keep full relative information even where the values underflow a double.
      rec.extra["lhs_ratio"] = static_cast<double>((initial.theta * gap + dist_part) / bound);
      rec.extra["dist_ratio"] = static_cast<double>(dist_part / bound);
    } else {
      rec.extra["bound"] = static_cast<double>(d0 / v.schedule.t_sum);
    }
    rep.records.push_back(std::move(rec));
  }};
  const RunResultT<S> res = run<S>(p, kind, x0, y0, iterations, hooks);
  if (res.report.aborted) rep.notes.push_back("aborted: " + res.report.abort_reason);
  rep.summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

ExperimentResult run_synthetic(const Config& cfg, std::uint64_t seed) {
  cfg.require_known({"d", "n", "mu", "nu", "norm", "iterations", "precision", "schedule", "theta", "alpha", "tau0",
                     "sigma0", "c_alpha"});
  const std::string precision = cfg.get_string("precision", "float128");
  ExperimentResult out;
  if (precision == "float128")
    out.reports.push_back(synthetic_run<float128>(cfg, seed));
  else if (precision == "double")
    out.reports.push_back(synthetic_run<double>(cfg, seed));
  else
    throw InvalidArgument("precision must be float128 or double");
  return out;
}

}  // namespace ogaprox
