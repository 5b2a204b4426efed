#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trustnet {

/// Error in a configuration text, with the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` document. Keys are dotted (`network.budget`); '#'
/// starts a comment; blank lines are ignored. Keys must be unique.
class KeyValueDocument {
 public:
  static KeyValueDocument parse(const std::string& text, const std::string& source = "<config>");
  static KeyValueDocument load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Value of `key`, or nullptr. Marks the key as used.
  const std::string* find(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

  /// Throws ConfigError naming the first key that was never read.
  void reject_unused() const;

  const std::string& source() const { return source_; }
  int line_of(const std::string& key) const;

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;

  std::string source_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  mutable std::map<std::string, bool> used_;
};

double parse_double(const std::string& text);
std::uint64_t parse_uint(const std::string& text);
/// Shortest text that reads back as the same double.
std::string format_double(double value);

}  // namespace trustnet
