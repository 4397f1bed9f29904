#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sdr::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key) + ": '" + std::string(text) + "' is not a valid number");
  return v;
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

RunConfig parse_key_value(std::string_view text, RunConfig cfg) {
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    const auto column_of = [&](std::string_view part) {
      return static_cast<std::size_t>(part.data() - line.data()) + 1;
    };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no, column_of(trim(line)));
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no, eq + 1);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigError("duplicate key '" + std::string(key) + "'", line_no, column_of(key));
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      const bool unknown = std::string_view(e.what()).starts_with("unknown key");
      const auto col = unknown || value.empty() ? column_of(key) : column_of(value);
      throw ConfigError(e.what(), line_no, col);
    }
    seen.emplace_back(key);
  }
  return cfg;
}

std::string json_value_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      if (!out.empty()) out += ',';
      out += json_value_text(item);
    }
    return out;
  }
  if (v.is_object()) {
    std::string out;
    for (const auto& [k, item] : v.items()) {
      if (!out.empty()) out += ',';
      out += k + "=" + json_value_text(item);
    }
    return out;
  }
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, ptr);
  }
  return v.dump();
}

RunConfig parse_json(std::string_view text, RunConfig cfg) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (const auto colon = msg.find("syntax error"); colon != std::string::npos) msg = msg.substr(colon);
    throw ConfigError(msg, line, col);
  }
  if (!doc.is_object()) throw ConfigError("config JSON must be an object", 1, 1);
  for (const auto& [key, value] : doc.items()) {
    try {
      apply_setting(cfg, key, json_value_text(value));
    } catch (const ConfigError& e) {
      const auto at = text.find("\"" + key + "\"");
      const auto [line, col] = line_column(text, at == std::string_view::npos ? 0 : at);
      throw ConfigError(e.what(), line, col);
    }
  }
  return cfg;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what), line_(line), column_(column) {}

std::optional<double> RunConfig::tolerance_for(std::string_view check) const {
  if (auto it = tol.find(std::string(check)); it != tol.end()) return it->second;
  if (auto it = tol.find("*"); it != tol.end()) return it->second;
  return std::nullopt;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "suite") {
    std::vector<std::string> suites;
    for (auto name : split(value, ',')) {
      if (name == "all") {
        suites = suite_names();
        break;
      }
      const auto& known = suite_names();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError("suite: unknown suite '" + std::string(name) + "'");
      if (std::find(suites.begin(), suites.end(), name) == suites.end()) suites.emplace_back(name);
    }
    cfg.suites = std::move(suites);
  } else if (key == "dim") {
    std::vector<int> dims;
    for (auto part : split(value, ',')) {
      const int d = parse_number<int>(key, part);
      if (d < 1 || d > 2) throw ConfigError("dim: dimensions 1 and 2 are supported, got " + std::string(part));
      if (std::find(dims.begin(), dims.end(), d) == dims.end()) dims.push_back(d);
    }
    cfg.dims = std::move(dims);
  } else if (key == "n") {
    const auto n = parse_number<std::size_t>(key, value);
    if (!power_of_two(n) || n < 8 || n > 8192)
      throw ConfigError("n: must be a power of two in [8, 8192], got " + std::string(value));
    cfg.n = n;
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "trials") {
    const auto t = parse_number<std::size_t>(key, value);
    if (t == 0) throw ConfigError("trials: must be positive");
    cfg.trials = t;
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out: empty output directory");
    cfg.out = std::string(value);
  } else if (key == "tol") {
    std::map<std::string, double> tol;
    for (auto part : split(value, ',')) {
      std::string name = "*";
      std::string_view number = part;
      if (const auto eq = part.find('='); eq != std::string_view::npos) {
        name = std::string(trim(part.substr(0, eq)));
        number = trim(part.substr(eq + 1));
      }
      const double v = parse_number<double>(key, number);
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("tol: tolerances must be finite and >= 0");
      tol[name] = v;
    }
    cfg.tol = std::move(tol);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text, std::move(base));
  return parse_key_value(text, std::move(base));
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

void validate(const RunConfig& cfg) {
  if (!cfg.seed) throw ConfigError("seed: a seed is required (no wall-clock seeding)");
  if (cfg.suites.empty()) throw ConfigError("suite: no suite selected");
  if (cfg.dims.empty()) throw ConfigError("dim: no dimension selected");
}

}  // namespace sdr::cli
