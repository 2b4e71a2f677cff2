#include "ogaprox/problem.hpp"

#include "ogaprox/prox.hpp"

#include <algorithm>
#include <limits>

namespace ogaprox {

namespace {

constexpr int kOracleSamples = 30;

}  // namespace

ValidationReport validate_problem(const SaddleProblem& p, int trials, std::uint64_t seed) {
  if (trials <= 0) throw InvalidArgument("validate_problem: trials must be positive");
  ValidationReport report;
  report.problem = p.name();
  report.trials = trials;
  const ProblemConstants c = p.constants();
  c.validate();

  Philox4x32 rng(seed, stream_id("validate/lipschitz"));
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Vector x1 = p.sample_x(rng), y1 = p.sample_y(rng);
    const Vector x2 = p.sample_x(rng), y2 = p.sample_y(rng);
    const Vector g1 = p.grad_y(x1, y1), g2 = p.grad_y(x2, y2);
    const double lhs = (g1 - g2).norm();
    const double rhs = c.l_yx * (x1 - x2).norm() + c.l_yy * (y1 - y2).norm();
    const double floor = 1e-12 * (g1.norm() + g2.norm()) + std::numeric_limits<double>::min();
    worst = std::max(worst, (lhs - rhs) / std::max(rhs, floor));
  }
  report.lipschitz_violation = std::max(worst, 0.0);

  report.prox_checked = p.has_values();
  if (!report.prox_checked) return report;

  Philox4x32 prox_rng(seed, stream_id("validate/prox"));
  double worst_x = -std::numeric_limits<double>::infinity();
  double worst_g = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const double tau = prox_rng.uniform(0.05, 2.0);
    const double sigma = prox_rng.uniform(0.05, 2.0);
    const Vector y = p.sample_y(prox_rng);
    Vector x = p.sample_x(prox_rng);
    for (Index i = 0; i < x.size(); ++i) x(i) += prox_rng.normal();
    Vector v = p.sample_y(prox_rng);
    for (Index i = 0; i < v.size(); ++i) v(i) += prox_rng.normal();

    const Vector px = p.prox_phi_x(tau, y, x);
    const ConvexFunction fx = [&](const Vector& u) {
      if (!p.in_x_domain(u)) return ExtendedReal::plus_inf();
      return ExtendedReal::finite(tau * p.phi(u, y));
    };
    const Retraction rx = [&](const Vector& u) { return p.retract_x(u); };
    worst_x = std::max(worst_x, prox_oracle(fx, x, px, kOracleSamples, prox_rng.next_u64(), rx));

    const Vector pv = p.prox_g(sigma, v);
    const ConvexFunction fg = [&](const Vector& w) {
      if (!p.in_y_domain(w)) return ExtendedReal::plus_inf();
      return ExtendedReal::finite(sigma * p.g(w));
    };
    const Retraction ry = [&](const Vector& w) { return p.retract_y(w); };
    worst_g = std::max(worst_g, prox_oracle(fg, v, pv, kOracleSamples, prox_rng.next_u64(), ry));
  }
  report.prox_x_violation = std::max(worst_x, 0.0);
  report.prox_g_violation = std::max(worst_g, 0.0);
  return report;
}

}  // namespace ogaprox
