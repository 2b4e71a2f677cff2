#pragma once

#include "ogaprox/core.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ogaprox {

struct MetricRecord {
  Index k = 0;
  std::optional<double> gap;
  std::optional<double> dist_x;
  std::optional<double> dist_y;
  std::optional<double> tsa;  // percent
  double theta = 0.0, tau = 0.0, sigma = 0.0;
  std::map<std::string, double> extra;  // JSON only (bounds, per-run values, ...)
};

/// One series of checkpoint records, e.g. one dataset/variant pair.
struct Report {
  std::string label;
  std::map<std::string, std::string> config;  // echo of the effective configuration
  std::map<std::string, double> summary;      // run constants (d0, c1, ...)
  std::vector<std::string> notes;             // warnings and flags
  std::vector<MetricRecord> records;
};

/// `git describe`-style version of this build.
std::string version_string();

std::string to_csv(const Report& report);
/// The JSON text (via nlohmann::json) of a report.
std::string to_json(const Report& report);
Report report_from_json(const std::string& text);

enum class ReportFormat { Csv, Json };

/// Writes the report; throws Error naming the path on I/O failure.
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace ogaprox
