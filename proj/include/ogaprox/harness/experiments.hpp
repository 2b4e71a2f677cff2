#pragma once

#include "ogaprox/harness/config.hpp"
#include "ogaprox/harness/report.hpp"
#include "ogaprox/problem.hpp"
#include "ogaprox/schedule.hpp"

#include <cstdint>
#include <vector>

namespace ogaprox {

struct ExperimentResult {
  std::vector<Report> reports;
};

/// Schedule from the config keys `schedule` (constant | adaptive | linear),
/// `tau0`, `sigma0`, `c_alpha`, `theta`, `alpha`; anything absent falls back
/// to default_schedule(`fallback`, c, tau0).
ScheduleKind schedule_from_config(const Config& cfg, ScheduleType fallback, const ProblemConstants& c,
                                  std::optional<double> tau0 = std::nullopt);
ScheduleType parse_schedule_type(const std::string& s);

/// Roughly log-spaced checkpoints in [1, max_iter] (20 per decade), always
/// including max_iter.
std::vector<Index> log_checkpoints(Index max_iter);

/// Mean after removing one minimum and one maximum (plain mean for fewer
/// than three values).
double trimmed_mean(std::vector<double> values);

/// Toy problem (keys: d, n, nu, iterations, checkpoints, schedule, tau0,
/// sigma0, c_alpha). Without `nu` both ν = 0 (constant schedule) and
/// ν = 0.3 (adaptive schedule) are run on the same matrix and start. For
/// ν > 0 the default τ₀ is 0.45ν/L_yx², which makes the default σ₀ = 1/ν.
ExperimentResult run_toy(const Config& cfg, std::uint64_t seed);

/// Multi-kernel SVM (keys: data_dir, dataset [name or all], variant
/// [C1 | A | C2 | all], mu, nu, C, runs, split, checkpoints, schedule, tau0,
/// sigma0, c_alpha).
ExperimentResult run_mksvm(const Config& cfg, std::uint64_t seed);

/// Minimax-fairness classifier on heart-disease (keys: data_dir, grouping
/// [sex | age | both], runs, split, checkpoints, schedule, tau0, sigma0,
/// c_alpha).
ExperimentResult run_fairness(const Config& cfg, std::uint64_t seed);

/// Strongly convex-strongly concave quadratic (keys: d, n, mu, nu, norm,
/// iterations, precision [float128 | double], schedule, theta, alpha,
/// tau0, sigma0, c_alpha).
ExperimentResult run_synthetic(const Config& cfg, std::uint64_t seed);

/// Runs validate_problem on small instances of every problem type (key:
/// trials).
std::vector<ValidationReport> run_validation(const Config& cfg, std::uint64_t seed);

}  // namespace ogaprox
