#include "ogaprox/harness/experiments.hpp"

#include "ogaprox/certificate.hpp"
#include "ogaprox/harness/dataset.hpp"
#include "ogaprox/problems/fairness.hpp"
#include "ogaprox/problems/mksvm.hpp"
#include "ogaprox/problems/quadratic.hpp"
#include "ogaprox/problems/toy.hpp"
#include "ogaprox/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ogaprox {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const std::set<std::string> kScheduleKeys = {"schedule", "tau0", "sigma0", "c_alpha", "theta", "alpha"};

std::set<std::string> with_schedule_keys(std::set<std::string> keys) {
  keys.insert(kScheduleKeys.begin(), kScheduleKeys.end());
  return keys;
}

void check_checkpoints(const std::vector<Index>& cps, Index max_iter) {
  if (cps.empty()) throw InvalidArgument("checkpoints must not be empty");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1) throw InvalidArgument("checkpoints must be positive");
    if (i > 0 && cps[i] <= cps[i - 1]) throw InvalidArgument("checkpoints must be strictly ascending");
  }
  if (cps.back() > max_iter) throw InvalidArgument("last checkpoint exceeds the iteration count");
}

bool is_checkpoint(const std::vector<Index>& cps, Index k) { return std::binary_search(cps.begin(), cps.end(), k); }

void fill_schedule(MetricRecord& rec, const IterationRecordT<double>& it) {
  rec.theta = it.theta;
  rec.tau = it.tau;
  rec.sigma = it.sigma;
}

void echo_schedule(Report& r, const ScheduleKind& kind) {
  r.config["schedule"] = to_string(kind.type);
  if (kind.type == ScheduleType::LinearSCSC) {
    r.config["theta"] = fmt(kind.theta);
    r.config["alpha"] = fmt(kind.alpha);
  } else {
    r.config["tau0"] = fmt(kind.tau);
    r.config["sigma0"] = fmt(kind.sigma);
    r.config["c_alpha"] = fmt(kind.c_alpha);
  }
}

std::filesystem::path dataset_path(const Config& cfg, DatasetName name) {
  return std::filesystem::path(cfg.get_string("data_dir", "data")) / default_file_name(name);
}

double accuracy(const std::vector<int>& predicted, const Vector& truth, const std::vector<Index>& rows) {
  if (rows.empty()) return NAN;
  Index correct = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (predicted[i] == static_cast<int>(truth(rows[i]))) ++correct;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace

ScheduleType parse_schedule_type(const std::string& s) {
  for (ScheduleType t : {ScheduleType::ConstantCC, ScheduleType::AdaptiveCSC, ScheduleType::LinearSCSC})
    if (to_string(t) == s) return t;
  throw InvalidArgument("unknown schedule '" + s + "' (expected constant, adaptive or linear)");
}

ScheduleKind schedule_from_config(const Config& cfg, ScheduleType fallback, const ProblemConstants& c,
                                  std::optional<double> tau0) {
  const ScheduleType type = cfg.has("schedule") ? parse_schedule_type(cfg.get_string("schedule", "")) : fallback;
  if (const auto t = cfg.get_optional_double("tau0")) tau0 = *t;
  ScheduleKind kind = default_schedule(type, c, tau0);
  if (type == ScheduleType::LinearSCSC) {
    if (const auto a = cfg.get_optional_double("alpha")) {
      kind.alpha = *a;
      kind.theta = (1.0 + theta_tilde(c, kind.alpha)) / 2.0;
    }
    kind.theta = cfg.get_double("theta", kind.theta);
    return kind;
  }
  if (const auto ca = cfg.get_optional_double("c_alpha")) {
    kind.c_alpha = *ca;
    if (!cfg.has("sigma0")) {
      // Keep the default safety margin for the user's c_alpha.
      const double denom = kind.c_alpha * c.l_yx * kind.tau + 2.0 * c.l_yy;
      kind.sigma = denom > 0.0 ? 0.9 / denom : 1.0;
      if (c.nu > 0.0) kind.sigma = std::min(kind.sigma, adaptive_sigma_cap(c.nu));
    }
  }
  kind.sigma = cfg.get_double("sigma0", kind.sigma);
  return kind;
}

std::vector<Index> log_checkpoints(Index max_iter) {
  std::vector<Index> out;
  for (int i = 0;; ++i) {
    const auto k = static_cast<Index>(std::llround(std::pow(10.0, i / 20.0)));
    if (k >= max_iter) break;
    if (out.empty() || k > out.back()) out.push_back(k);
  }
  if (max_iter >= 1) out.push_back(max_iter);
  return out;
}

double trimmed_mean(std::vector<double> values) {
  if (values.empty()) return NAN;
  if (values.size() >= 3) {
    std::sort(values.begin(), values.end());
    values.erase(values.begin());
    values.pop_back();
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

ExperimentResult run_toy(const Config& cfg, std::uint64_t seed) {
  cfg.require_known(with_schedule_keys({"d", "n", "nu", "iterations", "checkpoints"}));
  const Index d = cfg.get_int("d", 250), n = cfg.get_int("n", 350);
  if (d < 1 || n < d) throw InvalidArgument("toy: need 1 <= d <= n");
  const Index iterations = cfg.get_int("iterations", 10000);
  const auto checkpoints = cfg.get_int_list("checkpoints", log_checkpoints(iterations));
  check_checkpoints(checkpoints, iterations);
  std::vector<double> nus = {0.0, 0.3};
  if (const auto nu = cfg.get_optional_double("nu")) nus = {*nu};

  Philox4x32 rng(seed, stream_id("toy"));
  const Matrix a = ToyProblem::random_matrix(d, n, rng);
  Vector x0(d), y_raw(n);
  for (Index i = 0; i < d; ++i) x0(i) = rng.uniform(-5.0, 5.0);
  for (Index i = 0; i < n; ++i) y_raw(i) = rng.uniform(-5.0, 5.0);

  ExperimentResult out;
  for (double nu : nus) {
    const auto t0 = Clock::now();
    const ToyProblem p(a, nu);
    // The uniform draw is generally outside C = dom g; start from its projection.
    const Vector y0 = project_polytope(p.polytope(), y_raw);
    const ProblemConstants c = p.constants();
    // For ν > 0, τ₀ is chosen so that the default σ₀ equals 1/ν: the adaptive
    // steps only start to shrink once νσ_k is of order one.
    std::optional<double> tau0;
    if (nu > 0.0 && c.l_yx > 0.0) tau0 = 0.9 * nu / (2.0 * c.l_yx * c.l_yx);
    const ScheduleKind kind =
        schedule_from_config(cfg, nu > 0.0 ? ScheduleType::AdaptiveCSC : ScheduleType::ConstantCC, c, tau0);
    const ScheduleState initial = make_schedule(kind, c);
    const auto [xs, ys] = *p.saddle_point();
    const double d0 = initial_distance<double>(xs, ys, x0, y0, initial.tau0, initial.sigma0);
    const auto certs = rate_certificates(kind, initial, c, d0);

    Report rep;
    rep.label = "toy_nu" + fmt(nu);
    rep.config = {{"experiment", "toy"},          {"d", std::to_string(d)},
                  {"n", std::to_string(n)},        {"nu", fmt(nu)},
                  {"iterations", std::to_string(iterations)}, {"seed", std::to_string(seed)}};
    echo_schedule(rep, kind);
    rep.summary = {{"d0", d0}, {"l_yx", c.l_yx}, {"delta", initial.delta}};
    for (const auto& cert : certs) {
      if (cert.kind == CertificateKind::GapO1K2) rep.summary["c2"] = cert.constant;
      if (cert.kind == CertificateKind::IterateO1K) rep.summary["c1"] = cert.constant;
    }

    std::vector<MetricHookT<double>> hooks{[&](const IterationViewT<double>& v) {
      if (!is_checkpoint(checkpoints, v.state.k)) return;
      MetricRecord rec;
      rec.k = v.state.k;
      const ExtendedReal gap = p.gap(xs, ys, v.state.erg_x, v.state.erg_y);
      rec.gap = gap.to_scalar();
      rec.dist_x = (v.state.x_cur - xs).norm();
      if (nu > 0.0) rec.dist_y = (v.state.y_cur - ys).norm();
      fill_schedule(rec, v.record);
      rec.extra["gap_bound"] = d0 / v.schedule.t_sum;
      for (const auto& cert : certs) {
        if (cert.kind == CertificateKind::GapO1K2) rec.extra["gap_bound_k2"] = cert.bound(rec.k);
        if (cert.kind == CertificateKind::IterateO1K) rec.extra["dist_y_bound"] = cert.bound(rec.k);
      }
      rep.records.push_back(std::move(rec));
    }};
    const RunResultT<double> res = run<double>(p, kind, x0, y0, iterations, hooks);
    if (res.report.aborted) rep.notes.push_back("aborted: " + res.report.abort_reason);
    rep.summary["seconds"] = seconds_since(t0);
    out.reports.push_back(std::move(rep));
  }
  return out;
}

namespace {

struct MkSvmVariant {
  std::string name;
  ScheduleType schedule;
  double mu;
  double nu;
};

std::vector<MkSvmVariant> mksvm_variants(const std::string& which) {
  const std::vector<MkSvmVariant> all = {{"C1", ScheduleType::ConstantCC, 0.0, 0.0},
                                         {"A", ScheduleType::AdaptiveCSC, 0.0, 0.5},
                                         {"C2", ScheduleType::LinearSCSC, 1.0, 0.5}};
  if (which == "all") return all;
  for (const auto& v : all)
    if (v.name == which) return {v};
  throw InvalidArgument("unknown mksvm variant '" + which + "' (expected C1, A, C2 or all)");
}

std::vector<DatasetName> dataset_list(const std::string& which) {
  if (which == "all")
    return {DatasetName::BreastCancer, DatasetName::HeartDisease, DatasetName::Ionosphere, DatasetName::Sonar};
  return {parse_dataset_name(which)};
}

}  // namespace

ExperimentResult run_mksvm(const Config& cfg, std::uint64_t seed) {
  cfg.require_known(with_schedule_keys(
      {"data_dir", "dataset", "variant", "mu", "nu", "C", "runs", "split", "checkpoints", "iterations"}));
  const Index runs = cfg.get_int("runs", 12);
  const double split = cfg.get_double("split", 0.8);
  const double box_c = cfg.get_double("C", 1.0);
  const auto checkpoints = cfg.get_int_list("checkpoints", {250, 500, 1000, 1500, 2000});
  const Index iterations = cfg.get_int("iterations", checkpoints.empty() ? 0 : checkpoints.back());
  check_checkpoints(checkpoints, iterations);
  if (runs < 1) throw InvalidArgument("runs must be positive");

  ExperimentResult out;
  for (DatasetName ds : dataset_list(cfg.get_string("dataset", "all"))) {
    const Dataset data = load_dataset(ds, dataset_path(cfg, ds));
    std::vector<Matrix> kernels;
    for (KernelType kt : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear})
      kernels.push_back(normalize_kernel(kernel_matrix(kt, data.features)));

    for (const MkSvmVariant& var : mksvm_variants(cfg.get_string("variant", "C1"))) {
      const auto t0 = Clock::now();
      const double mu = cfg.get_double("mu", var.mu), nu = cfg.get_double("nu", var.nu);
      Report rep;
      rep.label = "mksvm_" + to_string(ds) + "_" + var.name;
      rep.config = {{"experiment", "mksvm"}, {"dataset", to_string(ds)}, {"variant", var.name},
                    {"mu", fmt(mu)},        {"nu", fmt(nu)},             {"C", fmt(box_c)},
                    {"runs", std::to_string(runs)}, {"split", fmt(split)}, {"seed", std::to_string(seed)}};
      rep.notes = data.warnings;
      std::vector<std::vector<double>> tsa(checkpoints.size());
      std::vector<MetricRecord> first_run;
      Index fallbacks = 0;

      for (Index r = 0; r < runs; ++r) {
        Philox4x32 rng(seed, stream_id("mksvm/" + to_string(ds), static_cast<std::uint64_t>(r)));
        const Split sp = random_split(data.rows(), split, rng);
        Vector b(static_cast<Index>(sp.train.size()));
        for (std::size_t i = 0; i < sp.train.size(); ++i) b(static_cast<Index>(i)) = data.labels(sp.train[i]);
        const MkSvmProblem p = MkSvmProblem::from_kernels(kernels, sp.train, b, mu, nu, box_c);
        const ProblemConstants c = p.constants();
        // Small primal steps leave room for a dual step of order 1/L_yy.
        const ScheduleKind kind = schedule_from_config(cfg, var.schedule, c, c.l_yy / (c.l_yx * c.l_yx));
        if (r == 0) {
          echo_schedule(rep, kind);
          rep.summary = {{"l_yx", c.l_yx}, {"l_yy", c.l_yy}, {"train", static_cast<double>(sp.train.size())},
                         {"test", static_cast<double>(sp.test.size())}};
        }
        const Vector x0 = Vector::Constant(p.dim_x(), 1.0 / static_cast<double>(p.dim_x()));
        const Vector y0 = Vector::Zero(p.dim_y());
        std::size_t cp = 0;
        std::vector<MetricHookT<double>> hooks{[&](const IterationViewT<double>& v) {
          if (!is_checkpoint(checkpoints, v.state.k)) return;
          const MkSvmPrediction pred = mksvm_predict(kernels, sp.train, b, sp.test, v.state.y_cur,
                                                     mksvm_eta(kernels, v.state.x_cur), nu, box_c);
          if (pred.fallback) ++fallbacks;
          const double acc = accuracy(pred.labels, data.labels, sp.test);
          tsa[cp].push_back(acc);
          if (r == 0) {
            MetricRecord rec;
            rec.k = v.state.k;
            fill_schedule(rec, v.record);
            first_run.push_back(rec);
          }
          ++cp;
        }};
        const RunResultT<double> res = run<double>(p, kind, x0, y0, iterations, hooks);
        if (res.report.aborted) rep.notes.push_back("run " + std::to_string(r) + " aborted: " + res.report.abort_reason);
      }
      if (fallbacks > 0)
        rep.notes.push_back(std::to_string(fallbacks) +
                            " checkpoint predictions used the fallback support vector (no alpha inside the band)");
      for (std::size_t i = 0; i < first_run.size(); ++i) {
        MetricRecord rec = first_run[i];
        rec.tsa = trimmed_mean(tsa[i]);
        for (std::size_t r = 0; r < tsa[i].size(); ++r) rec.extra["tsa_run" + std::to_string(r)] = tsa[i][r];
        rep.records.push_back(std::move(rec));
      }
      rep.summary["seconds"] = seconds_since(t0);
      out.reports.push_back(std::move(rep));
    }
  }
  return out;
}

namespace {

FairnessGroup select_rows(const Matrix& features, const Vector& labels, const std::vector<Index>& rows) {
  FairnessGroup g;
  g.features.resize(static_cast<Index>(rows.size()), features.cols());
  g.labels.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    g.features.row(static_cast<Index>(i)) = features.row(rows[i]);
    g.labels(static_cast<Index>(i)) = labels(rows[i]);
  }
  return g;
}

// Per-checkpoint accuracies of one run: overall and per group.
struct FairnessTrace {
  std::vector<double> overall;
  std::vector<std::vector<double>> by_group;  // [checkpoint][group]
  std::vector<MetricRecord> schedule;
};

FairnessTrace fairness_trace(const FairnessProblem& p, const Config& cfg, const Matrix& affine, const Vector& labels,
                             const Split& sp, const std::vector<Index>& groups, Index n_groups,
                             const std::vector<Index>& checkpoints, Index iterations, ScheduleKind* kind_out) {
  const ScheduleKind kind = schedule_from_config(cfg, ScheduleType::ConstantCC, p.constants());
  if (kind_out) *kind_out = kind;
  FairnessTrace tr;
  Matrix test_features(static_cast<Index>(sp.test.size()), affine.cols());
  for (std::size_t i = 0; i < sp.test.size(); ++i) test_features.row(static_cast<Index>(i)) = affine.row(sp.test[i]);
  std::vector<MetricHookT<double>> hooks{[&](const IterationViewT<double>& v) {
    if (!is_checkpoint(checkpoints, v.state.k)) return;
    const std::vector<int> pred = predict_linear(test_features, v.state.x_cur);
    tr.overall.push_back(accuracy(pred, labels, sp.test));
    std::vector<double> per(static_cast<std::size_t>(n_groups));
    for (Index g = 0; g < n_groups; ++g) {
      std::vector<Index> rows;
      std::vector<int> sub;
      for (std::size_t i = 0; i < sp.test.size(); ++i)
        if (groups[static_cast<std::size_t>(sp.test[i])] == g) {
          rows.push_back(sp.test[i]);
          sub.push_back(pred[i]);
        }
      per[static_cast<std::size_t>(g)] = accuracy(sub, labels, rows);
    }
    tr.by_group.push_back(per);
    MetricRecord rec;
    rec.k = v.state.k;
    fill_schedule(rec, v.record);
    tr.schedule.push_back(rec);
  }};
  const Vector x0 = Vector::Zero(p.dim_x());
  const Vector y0 = Vector::Constant(p.dim_y(), 1.0 / static_cast<double>(p.dim_y()));
  const RunResultT<double> res = run<double>(p, kind, x0, y0, iterations, hooks);
  if (res.report.aborted) throw NumericalError("fairness run aborted: " + res.report.abort_reason);
  return tr;
}

double mean_finite(const std::vector<double>& v) {
  double s = 0.0;
  int n = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      s += x;
      ++n;
    }
  return n > 0 ? s / n : NAN;
}

}  // namespace

ExperimentResult run_fairness(const Config& cfg, std::uint64_t seed) {
  cfg.require_known(
      with_schedule_keys({"data_dir", "grouping", "runs", "split", "checkpoints", "iterations", "intercept"}));
  const Index runs = cfg.get_int("runs", 5);
  const double split = cfg.get_double("split", 0.8);
  const auto checkpoints = cfg.get_int_list("checkpoints", {100, 500, 1000});
  const Index iterations = cfg.get_int("iterations", checkpoints.empty() ? 0 : checkpoints.back());
  check_checkpoints(checkpoints, iterations);
  if (runs < 1) throw InvalidArgument("runs must be positive");
  const std::string which = cfg.get_string("grouping", "both");
  std::vector<Grouping> groupings;
  if (which == "both")
    groupings = {Grouping::Sex, Grouping::Age};
  else
    groupings = {parse_grouping(which)};

  const Dataset data = load_dataset(DatasetName::HeartDisease, dataset_path(cfg, DatasetName::HeartDisease));
  // intercept = true: affine predictor aᵀx + x_0 through a constant feature.
  const std::string intercept = cfg.get_string("intercept", "true");
  if (intercept != "true" && intercept != "false") throw InvalidArgument("intercept must be true or false");
  Matrix affine = data.features;
  if (intercept == "true") {
    affine.conservativeResize(Eigen::NoChange, data.features.cols() + 1);
    affine.col(data.features.cols()).setOnes();
  }

  // Accuracy traces indexed [grouping][mode (0 = with, 1 = without)][run].
  std::vector<std::array<std::vector<FairnessTrace>, 2>> traces(groupings.size());
  std::vector<ScheduleKind> kinds(groupings.size() * 2);
  std::vector<std::vector<Index>> group_of;
  for (Grouping g : groupings) group_of.push_back(heart_groups(data, g));

  for (Index r = 0; r < runs; ++r) {
    Philox4x32 rng(seed, stream_id("fairness/split", static_cast<std::uint64_t>(r)));
    const Split sp = random_split(data.rows(), split, rng);

    // Without fairness: one group holding every training row, shared by all groupings.
    const FairnessProblem plain({select_rows(affine, data.labels, sp.train)});
    for (std::size_t gi = 0; gi < groupings.size(); ++gi) {
      const Index m = group_count(groupings[gi]);
      std::vector<std::vector<Index>> members(static_cast<std::size_t>(m));
      for (Index row : sp.train) members[static_cast<std::size_t>(group_of[gi][static_cast<std::size_t>(row)])].push_back(row);
      std::vector<FairnessGroup> groups;
      for (const auto& rows : members) {
        if (rows.empty()) throw InvalidArgument("fairness: a group has no training rows in partition " + std::to_string(r));
        groups.push_back(select_rows(affine, data.labels, rows));
      }
      const FairnessProblem fair(std::move(groups));
      traces[gi][0].push_back(fairness_trace(fair, cfg, affine, data.labels, sp, group_of[gi], m, checkpoints,
                                             iterations, &kinds[2 * gi]));
    }
    // The single-group run does not depend on the grouping; evaluate it once per grouping.
    for (std::size_t gi = 0; gi < groupings.size(); ++gi)
      traces[gi][1].push_back(fairness_trace(plain, cfg, affine, data.labels, sp, group_of[gi],
                                             group_count(groupings[gi]), checkpoints, iterations, &kinds[2 * gi + 1]));
  }

  ExperimentResult out;
  for (std::size_t gi = 0; gi < groupings.size(); ++gi) {
    const auto names = group_names(groupings[gi]);
    for (int mode = 0; mode < 2; ++mode) {
      Report rep;
      rep.label = "fairness_" + to_string(groupings[gi]) + (mode == 0 ? "_with" : "_without");
      rep.config = {{"experiment", "fairness"},
                    {"grouping", to_string(groupings[gi])},
                    {"fairness", mode == 0 ? "with" : "without"},
                    {"intercept", intercept},
                    {"runs", std::to_string(runs)},
                    {"split", fmt(split)},
                    {"seed", std::to_string(seed)}};
      echo_schedule(rep, kinds[2 * gi + static_cast<std::size_t>(mode)]);
      const auto& tr = traces[gi][static_cast<std::size_t>(mode)];
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        MetricRecord rec = tr.front().schedule[c];
        std::vector<double> overall;
        for (const auto& t : tr) overall.push_back(t.overall[c]);
        rec.tsa = mean_finite(overall);
        double worst = INFINITY;
        for (std::size_t g = 0; g < names.size(); ++g) {
          std::vector<double> per;
          for (const auto& t : tr) per.push_back(t.by_group[c][g]);
          const double avg = mean_finite(per);
          rec.extra["tsa_" + names[g]] = avg;
          worst = std::min(worst, avg);
        }
        rec.extra["tsa_min_group"] = worst;
        rep.records.push_back(std::move(rec));
      }
      out.reports.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<ValidationReport> run_validation(const Config& cfg, std::uint64_t seed) {
  cfg.require_known({"trials"});
  const int trials = static_cast<int>(cfg.get_int("trials", 1000));
  Philox4x32 rng(seed, stream_id("validate"));
  std::vector<ValidationReport> out;

  out.push_back(validate_problem(ToyProblem(ToyProblem::random_matrix(8, 12, rng), 0.3), trials, seed));

  Matrix a(6, 5);
  for (Index i = 0; i < a.size(); ++i) a(i) = rng.normal();
  Vector c(6);
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
  out.push_back(validate_problem(BilinearProblem(a, c, 0.5), trials, seed));
  out.push_back(validate_problem(QuadraticSCSC::random(5, 6, 1.0, 1.0, rng), trials, seed));

  Matrix points(20, 4);
  for (Index i = 0; i < points.size(); ++i) points(i) = rng.normal();
  std::vector<Matrix> kernels;
  for (KernelType kt : {KernelType::Polynomial, KernelType::Gaussian, KernelType::Linear})
    kernels.push_back(normalize_kernel(kernel_matrix(kt, points)));
  std::vector<Index> train(16);
  std::iota(train.begin(), train.end(), Index{0});
  Vector b(16);
  for (Index i = 0; i < 16; ++i) b(i) = i % 2 == 0 ? 1.0 : -1.0;
  out.push_back(validate_problem(MkSvmProblem::from_kernels(kernels, train, b, 0.5, 0.5, 1.0), trials, seed));

  std::vector<FairnessGroup> groups(2);
  for (auto& g : groups) {
    g.features.resize(10, 5);
    g.labels.resize(10);
    for (Index i = 0; i < g.features.size(); ++i) g.features(i) = rng.normal();
    for (Index i = 0; i < 10; ++i) g.labels(i) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
  }
  out.push_back(validate_problem(FairnessProblem(groups), trials, seed));
  return out;
}

}  // namespace ogaprox
