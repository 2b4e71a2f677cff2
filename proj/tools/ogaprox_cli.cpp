// Command-line front end: one subcommand per experiment plus a self-check.
//
//   ogaprox validate  [--config FILE] [--seed N]
//   ogaprox toy       [--config FILE] [--seed N] [--out DIR] [--set key=value ...]
//   ogaprox mksvm     ...
//   ogaprox fairness  ...
//   ogaprox synthetic ...
//
// Exit codes: 0 success, 1 runtime error, 2 validation failure.

#include "ogaprox/harness/config.hpp"
#include "ogaprox/harness/experiments.hpp"
#include "ogaprox/harness/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

using namespace ogaprox;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = "results";
  std::string format = "both";
  std::vector<std::string> overrides;
  bool quiet = false;
};

Config load_config(const Options& o) {
  Config cfg = o.config_path.empty() ? Config() : Config::load(o.config_path);
  for (const std::string& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + kv + "'");
    Config one = Config::parse(kv, "--set");
    for (const auto& [k, v] : one.values()) cfg.set(k, v);
  }
  return cfg;
}

void write_reports(const ExperimentResult& result, const Options& o) {
  fs::create_directories(o.out_dir);
  for (const Report& r : result.reports) {
    if (o.format == "csv" || o.format == "both")
      emit_report(r, ReportFormat::Csv, fs::path(o.out_dir) / (r.label + ".csv"));
    if (o.format == "json" || o.format == "both")
      emit_report(r, ReportFormat::Json, fs::path(o.out_dir) / (r.label + ".json"));
    if (o.quiet) continue;
    std::printf("%s: %zu records", r.label.c_str(), r.records.size());
    if (!r.records.empty()) {
      const MetricRecord& last = r.records.back();
      std::printf(", k=%lld", static_cast<long long>(last.k));
      if (last.gap) std::printf(" gap=%.4g", *last.gap);
      if (last.dist_y) std::printf(" dist_y=%.4g", *last.dist_y);
      if (last.tsa) std::printf(" tsa=%.2f", *last.tsa);
    }
    std::printf("\n");
    for (const std::string& note : r.notes) std::printf("  note: %s\n", note.c_str());
  }
}

int validate(const Options& o) {
  const auto reports = run_validation(load_config(o), o.seed);
  bool ok = true;
  for (const ValidationReport& v : reports) {
    const bool pass = v.passed();
    ok = ok && pass;
    std::printf("%-10s %s  lipschitz=%.2e prox_x=%.2e prox_g=%.2e (%d trials)\n", v.problem.c_str(),
                pass ? "ok  " : "FAIL", v.lipschitz_violation, v.prox_x_violation, v.prox_g_violation, v.trials);
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OGAProx saddle-point solver experiments (version " + version_string() + ")"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  Options opts;

  const auto add_common = [&](CLI::App* sub, bool writes) {
    sub->add_option("--config", opts.config_path, "Key-value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Random seed");
    sub->add_option("--set", opts.overrides, "Override a configuration key (key=value)");
    if (writes) {
      sub->add_option("--out", opts.out_dir, "Output directory for reports");
      sub->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"csv", "json", "both"}));
      sub->add_flag("--quiet", opts.quiet, "Do not print a summary");
    }
  };

  using Runner = std::function<ExperimentResult(const Config&, std::uint64_t)>;
  const std::map<std::string, std::pair<std::string, Runner>> experiments = {
      {"toy", {"Nonsmooth-linear toy problem (rates for nu = 0 and nu > 0)", run_toy}},
      {"mksvm", {"Multi-kernel SVM on the UCI datasets", run_mksvm}},
      {"fairness", {"Minimax group fairness on heart-disease", run_fairness}},
      {"synthetic", {"Strongly convex-strongly concave quadratic (linear rate)", run_synthetic}},
  };
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check Lipschitz constants and proximal maps");
  add_common(validate_cmd, false);
  std::map<CLI::App*, Runner> runners;
  for (const auto& [name, entry] : experiments) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    add_common(sub, true);
    runners[sub] = entry.second;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (validate_cmd->parsed()) return validate(opts);
    for (const auto& [sub, runner] : runners)
      if (sub->parsed()) {
        write_reports(runner(load_config(opts), opts.seed), opts);
        return 0;
      }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
