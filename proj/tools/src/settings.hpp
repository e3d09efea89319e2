#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swarmlife::cli {

// Bad invocation or configuration: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Flat "key = value" text. '#' starts a comment; blank lines are skipped.
// Throws UsageError naming `source` and the line number on malformed lines.
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source);

// String-valued settings for one subcommand. Flags override config file
// entries, which override the built-in defaults supplied at lookup time.
class Settings {
 public:
  explicit Settings(std::set<std::string> allowed) : allowed_(std::move(allowed)) {}

  // Key=value file, or a run manifest / report (JSON with a "config" object,
  // top level or under "manifest").
  void load_file(const std::string& path);
  void load_text(std::string_view text, std::string_view source);
  void set(const std::string& key, std::string value);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& raw(const std::string& key) const;

  std::string string_or(const std::string& key, std::string fallback) const;
  std::uint64_t u64_or(const std::string& key, std::uint64_t fallback) const;
  double double_or(const std::string& key, double fallback) const;
  std::optional<std::uint64_t> u64(const std::string& key) const;
  std::optional<double> real(const std::string& key) const;
  std::vector<double> doubles(const std::string& key) const;        // comma separated
  std::vector<std::uint64_t> u64_list(const std::string& key) const;  // comma separated

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  void check_key(const std::string& key, std::string_view where) const;

  std::set<std::string> allowed_;
  std::map<std::string, std::string> values_;
};

std::uint64_t parse_u64(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);

}  // namespace swarmlife::cli
