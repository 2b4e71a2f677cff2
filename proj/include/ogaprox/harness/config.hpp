#pragma once

#include "ogaprox/core.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ogaprox {

/// Flat `key = value` configuration. Blank lines and lines starting with `#`
/// are ignored; later keys override earlier ones.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  Index get_int(const std::string& key, Index fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  /// Comma-separated integers.
  std::vector<Index> get_int_list(const std::string& key, const std::vector<Index>& fallback) const;

  /// Throws InvalidArgument listing keys outside `known`.
  void require_known(const std::set<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace ogaprox
