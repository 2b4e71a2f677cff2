#include "ogaprox/harness/report.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#ifndef OGAPROX_VERSION
#define OGAPROX_VERSION "0.0.0-unknown"
#endif

namespace ogaprox {

namespace {

using nlohmann::json;

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os.precision(17);
  os << *v;
  return os.str();
}

std::string num(double v) { return cell(std::optional<double>(v)); }

// JSON has no infinities or NaN; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double from_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

std::optional<double> to_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return from_number(j);
}

}  // namespace

std::string version_string() { return OGAPROX_VERSION; }

std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "k,gap,dist_x,dist_y,tsa,theta,tau,sigma\n";
  for (const MetricRecord& r : report.records)
    os << r.k << ',' << cell(r.gap) << ',' << cell(r.dist_x) << ',' << cell(r.dist_y) << ',' << cell(r.tsa) << ','
       << num(r.theta) << ',' << num(r.tau) << ',' << num(r.sigma) << '\n';
  return os.str();
}

std::string to_json(const Report& report) {
  json j;
  j["label"] = report.label;
  j["version"] = version_string();
  j["config"] = report.config;
  json summary = json::object();
  for (const auto& [k, v] : report.summary) summary[k] = number(v);
  j["summary"] = summary;
  j["notes"] = report.notes;
  json records = json::array();
  for (const MetricRecord& r : report.records) {
    json rec;
    rec["k"] = r.k;
    rec["gap"] = optional_number(r.gap);
    rec["dist_x"] = optional_number(r.dist_x);
    rec["dist_y"] = optional_number(r.dist_y);
    rec["tsa"] = optional_number(r.tsa);
    rec["theta"] = number(r.theta);
    rec["tau"] = number(r.tau);
    rec["sigma"] = number(r.sigma);
    json extra = json::object();
    for (const auto& [k, v] : r.extra) extra[k] = number(v);
    rec["extra"] = extra;
    records.push_back(rec);
  }
  j["records"] = records;
  return j.dump(2);
}

Report report_from_json(const std::string& text) {
  const json j = json::parse(text);
  Report r;
  r.label = j.at("label").get<std::string>();
  r.config = j.at("config").get<std::map<std::string, std::string>>();
  for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = from_number(v);
  r.notes = j.at("notes").get<std::vector<std::string>>();
  for (const json& rec : j.at("records")) {
    MetricRecord m;
    m.k = rec.at("k").get<Index>();
    m.gap = to_optional(rec.at("gap"));
    m.dist_x = to_optional(rec.at("dist_x"));
    m.dist_y = to_optional(rec.at("dist_y"));
    m.tsa = to_optional(rec.at("tsa"));
    m.theta = from_number(rec.at("theta"));
    m.tau = from_number(rec.at("tau"));
    m.sigma = from_number(rec.at("sigma"));
    for (const auto& [k, v] : rec.at("extra").items()) m.extra[k] = from_number(v);
    r.records.push_back(std::move(m));
  }
  return r;
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << (format == ReportFormat::Csv ? to_csv(report) : to_json(report) + "\n");
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace ogaprox
