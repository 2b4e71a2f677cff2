#pragma once

#include "ogaprox/core.hpp"
#include "ogaprox/rng.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ogaprox {

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownDataset : public Error {
 public:
  using Error::Error;
};

enum class DatasetName { BreastCancer, HeartDisease, Ionosphere, Sonar };

std::string to_string(DatasetName name);
/// Accepts breast-cancer, heart-disease, ionosphere, sonar.
DatasetName parse_dataset_name(const std::string& s);
/// Conventional file name of each dataset inside a data directory.
std::string default_file_name(DatasetName name);

struct Dataset {
  std::string name;
  Matrix raw;       // complete rows, original feature values
  Matrix features;  // z-scored columns (zero-variance columns removed)
  Vector labels;    // ±1
  std::vector<Index> feature_columns;  // raw column of every kept feature
  Index dropped_rows = 0;              // rows with a missing value
  std::vector<std::string> warnings;

  Index rows() const { return features.rows(); }
};

/// Reads a comma-separated file.
///   breast-cancer  id, 9 features, class (2 benign → −1, 4 malignant → +1); `?` marks missing
///   heart-disease  13 features, class (1 absent → −1, 2 present → +1)
///   ionosphere     33 features, class (b → −1, g → +1)
///   sonar          60 features, class (R → −1, M → +1)
/// Rows with a missing value are dropped. Columns are normalized to zero
/// mean and unit (population) standard deviation; constant columns are
/// dropped with a warning.
Dataset load_dataset(DatasetName name, const std::filesystem::path& path);

enum class Grouping { None, Sex, Age };

std::string to_string(Grouping g);
Grouping parse_grouping(const std::string& s);

/// Group index per row of a heart-disease dataset, from the raw values:
/// sex 0 (female) → 0, 1 (male) → 1; age < 50 → 0, [50, 60) → 1, ≥ 60 → 2.
/// Grouping::None puts every row in group 0.
std::vector<Index> heart_groups(const Dataset& data, Grouping grouping);
Index group_count(Grouping grouping);
std::vector<std::string> group_names(Grouping grouping);

struct Split {
  std::vector<Index> train;  // ascending
  std::vector<Index> test;   // ascending
};

/// Random partition with round(fraction·n) training rows (Fisher-Yates
/// shuffle driven by `rng`).
Split random_split(Index n, double fraction, Philox4x32& rng);

}  // namespace ogaprox
