#include "ogaprox/harness/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ogaprox {

namespace {

struct ColumnMap {
  Index columns;       // fields per row
  Index first_feature; // features are [first_feature, label)
  Index label;
  std::string negative;
  std::string positive;
};

ColumnMap column_map(DatasetName name) {
  switch (name) {
    case DatasetName::BreastCancer:
      return {11, 1, 10, "2", "4"};
    case DatasetName::HeartDisease:
      return {14, 0, 13, "1", "2"};
    case DatasetName::Ionosphere:
      return {34, 0, 33, "b", "g"};
    case DatasetName::Sonar:
      return {61, 0, 60, "R", "M"};
  }
  throw UnknownDataset("unknown dataset");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& v) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && ptr == end && std::isfinite(v);
}

std::string location(const std::filesystem::path& path, std::size_t row, Index col) {
  return path.string() + ": row " + std::to_string(row) + ", column " + std::to_string(col + 1);
}

}  // namespace

std::string to_string(DatasetName name) {
  switch (name) {
    case DatasetName::BreastCancer:
      return "breast-cancer";
    case DatasetName::HeartDisease:
      return "heart-disease";
    case DatasetName::Ionosphere:
      return "ionosphere";
    case DatasetName::Sonar:
      return "sonar";
  }
  return "unknown";
}

DatasetName parse_dataset_name(const std::string& s) {
  for (DatasetName n : {DatasetName::BreastCancer, DatasetName::HeartDisease, DatasetName::Ionosphere, DatasetName::Sonar})
    if (to_string(n) == s) return n;
  throw UnknownDataset("unknown dataset '" + s + "' (expected breast-cancer, heart-disease, ionosphere or sonar)");
}

std::string default_file_name(DatasetName name) {
  switch (name) {
    case DatasetName::BreastCancer:
      return "breast-cancer-wisconsin.data";
    case DatasetName::HeartDisease:
      return "heart.csv";
    case DatasetName::Ionosphere:
      return "ionosphere.data";
    case DatasetName::Sonar:
      return "sonar.all-data";
  }
  return "";
}

Dataset load_dataset(DatasetName name, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  const ColumnMap map = column_map(name);
  const Index nfeat = map.label - map.first_feature;

  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  Dataset out;
  out.name = to_string(name);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (static_cast<Index>(fields.size()) != map.columns)
      throw ParseError(path.string() + ": row " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(map.columns));
    const std::string& lab = fields[static_cast<std::size_t>(map.label)];
    double label;
    if (lab == map.positive)
      label = 1.0;
    else if (lab == map.negative)
      label = -1.0;
    else
      throw ParseError(location(path, lineno, map.label) + ": unexpected label '" + lab + "'");

    std::vector<double> row(static_cast<std::size_t>(nfeat));
    bool missing = false;
    for (Index j = 0; j < nfeat; ++j) {
      const std::string& f = fields[static_cast<std::size_t>(map.first_feature + j)];
      if (f == "?" || f.empty()) {
        missing = true;
        break;
      }
      if (!parse_double(f, row[static_cast<std::size_t>(j)]))
        throw ParseError(location(path, lineno, map.first_feature + j) + ": not a number '" + f + "'");
    }
    if (missing) {
      ++out.dropped_rows;
      continue;
    }
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
  if (rows.empty()) throw ParseError(path.string() + ": no complete rows");

  const Index n = static_cast<Index>(rows.size());
  out.raw.resize(n, nfeat);
  out.labels.resize(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < nfeat; ++j) out.raw(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    out.labels(i) = labels[static_cast<std::size_t>(i)];
  }

  std::vector<Vector> cols;
  for (Index j = 0; j < nfeat; ++j) {
    Vector c = out.raw.col(j);
    const double mean = c.mean();
    c.array() -= mean;
    const double sd = std::sqrt(c.squaredNorm() / static_cast<double>(n));
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
      out.warnings.push_back(out.name + ": feature column " + std::to_string(j + 1) +
                             " has zero standard deviation and was dropped");
      continue;
    }
    cols.push_back(c / sd);
    out.feature_columns.push_back(j);
  }
  out.features.resize(n, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.features.col(static_cast<Index>(j)) = cols[j];
  return out;
}

std::string to_string(Grouping g) {
  switch (g) {
    case Grouping::None:
      return "none";
    case Grouping::Sex:
      return "sex";
    case Grouping::Age:
      return "age";
  }
  return "unknown";
}

Grouping parse_grouping(const std::string& s) {
  for (Grouping g : {Grouping::None, Grouping::Sex, Grouping::Age})
    if (to_string(g) == s) return g;
  throw InvalidArgument("unknown grouping '" + s + "' (expected none, sex or age)");
}

Index group_count(Grouping g) {
  switch (g) {
    case Grouping::None:
      return 1;
    case Grouping::Sex:
      return 2;
    case Grouping::Age:
      return 3;
  }
  return 1;
}

std::vector<std::string> group_names(Grouping g) {
  switch (g) {
    case Grouping::None:
      return {"all"};
    case Grouping::Sex:
      return {"female", "male"};
    case Grouping::Age:
      return {"age<50", "50<=age<60", "age>=60"};
  }
  return {};
}

std::vector<Index> heart_groups(const Dataset& data, Grouping grouping) {
  std::vector<Index> out(static_cast<std::size_t>(data.raw.rows()), 0);
  if (grouping == Grouping::None) return out;
  if (data.name != to_string(DatasetName::HeartDisease))
    throw InvalidArgument("groupings by sex and age are defined for heart-disease only");
  for (Index i = 0; i < data.raw.rows(); ++i) {
    if (grouping == Grouping::Sex) {
      const double sex = data.raw(i, 1);
      if (sex != 0.0 && sex != 1.0) throw ParseError("heart-disease: sex must be 0 or 1 in row " + std::to_string(i + 1));
      out[static_cast<std::size_t>(i)] = static_cast<Index>(sex);
    } else {
      const double age = data.raw(i, 0);
      out[static_cast<std::size_t>(i)] = age < 50.0 ? 0 : (age < 60.0 ? 1 : 2);
    }
  }
  return out;
}

Split random_split(Index n, double fraction, Philox4x32& rng) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw InvalidArgument("split fraction must lie in (0, 1)");
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  Split s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

}  // namespace ogaprox
