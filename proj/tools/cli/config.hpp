#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdr::cli {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"rearrange",   "specfun",     "inequalities",
                                                 "montgomery",  "schrodinger", "conjecture1"};
  return names;
}

struct RunConfig {
  std::vector<std::string> suites = suite_names();
  std::vector<int> dims = {1, 2};
  std::optional<std::size_t> n;  // cells per axis; each suite has its own default
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100;
  std::string out = "verify-out";
  /// Per-check overrides of the eps(h) budget; "*" applies to every check.
  std::map<std::string, double> tol;

  std::optional<double> tolerance_for(std::string_view check) const;
};

/// A config or flag value that cannot be accepted. line/column are 1-based
/// positions in the config file, 0 when the value came from a flag.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Sets one key from its textual value; unknown keys are rejected.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` lines ('#' starts a comment) or a JSON object with the same
/// keys, picked by the first non-blank character.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Seed present, everything else consistent.
void validate(const RunConfig& cfg);

}  // namespace sdr::cli
