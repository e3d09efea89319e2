#include "settings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace swarmlife::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(std::string(what) + ": expected a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError(std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto newline = text.find('\n', start);
    const auto raw = text.substr(start, newline == std::string_view::npos ? text.npos : newline - start);
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw UsageError(std::string(source) + ":" + std::to_string(line_no) +
                         ": expected 'key = value', got '" + std::string(line) + "'");
      }
      ConfigEntry entry{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                        line_no};
      if (entry.key.empty()) {
        throw UsageError(std::string(source) + ":" + std::to_string(line_no) + ": empty key");
      }
      entries.push_back(std::move(entry));
    }
    if (newline == std::string_view::npos) break;
    start = newline + 1;
  }
  return entries;
}

void Settings::check_key(const std::string& key, std::string_view where) const {
  if (allowed_.count(key) == 0) {
    std::string known;
    for (const auto& k : allowed_) known += (known.empty() ? "" : ", ") + k;
    throw UsageError(std::string(where) + ": unknown key '" + key + "' (known: " + known + ")");
  }
}

void Settings::load_text(std::string_view text, std::string_view source) {
  if (const auto body = trim(text); !body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string(source) + ": invalid JSON: " + e.what());
    }
    // a bare manifest, or a report that embeds one
    if (doc.contains("manifest") && doc["manifest"].is_object()) doc = doc["manifest"];
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw UsageError(std::string(source) + ": manifest has no \"config\" object");
    }
    for (const auto& [key, value] : doc["config"].items()) {
      if (value.is_null()) continue;
      check_key(key, source);
      if (value.is_string()) {
        values_[key] = value.get<std::string>();
      } else if (value.is_array()) {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
        values_[key] = joined;
      } else {
        values_[key] = value.dump();
      }
    }
    return;
  }
  for (auto& entry : parse_config_text(text, source)) {
    check_key(entry.key, std::string(source) + ":" + std::to_string(entry.line));
    values_[entry.key] = std::move(entry.value);
  }
}

void Settings::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  load_text(buffer.str(), path);
}

void Settings::set(const std::string& key, std::string value) {
  check_key(key, "option");
  values_[key] = std::move(value);
}

const std::string& Settings::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing required option --" + key);
  return it->second;
}

std::string Settings::string_or(const std::string& key, std::string fallback) const {
  return has(key) ? raw(key) : std::move(fallback);
}

std::uint64_t Settings::u64_or(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? parse_u64(raw(key), "--" + key) : fallback;
}

double Settings::double_or(const std::string& key, double fallback) const {
  return has(key) ? parse_double(raw(key), "--" + key) : fallback;
}

std::optional<std::uint64_t> Settings::u64(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return parse_u64(raw(key), "--" + key);
}

std::optional<double> Settings::real(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return parse_double(raw(key), "--" + key);
}

std::vector<double> Settings::doubles(const std::string& key) const {
  std::vector<double> out;
  if (!has(key) || trim(raw(key)).empty()) return out;
  for (auto part : split_commas(raw(key))) out.push_back(parse_double(part, "--" + key));
  return out;
}

std::vector<std::uint64_t> Settings::u64_list(const std::string& key) const {
  std::vector<std::uint64_t> out;
  if (!has(key) || trim(raw(key)).empty()) return out;
  for (auto part : split_commas(raw(key))) out.push_back(parse_u64(part, "--" + key));
  return out;
}

}  // namespace swarmlife::cli
