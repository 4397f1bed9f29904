#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdr/report.hpp"

namespace sdr::cli {

/// Exit statuses of the verify tool.
enum Exit : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs `verify` with arguments `args` (program name excluded), writing
/// human output to `out` and diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// 0 iff every verdict report passes; exploration reports are ignored.
int exit_status(const std::vector<InequalityReport>& reports);

/// report.json without the timestamp line, for reproducibility comparisons.
std::string strip_timestamp(const std::string& report_json);

}  // namespace sdr::cli
