#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdr {

enum class ReportKind {
  bound,        // lhs <= constant * rhs is asserted
  empirical,    // the constant is measured; pass means it is finite
  exploration,  // recorded only, never a verdict
};

std::string_view to_string(ReportKind kind);

struct InequalityReport {
  std::string name;
  std::string statement;
  ReportKind kind = ReportKind::bound;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_used = 1.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool pass_raw = false;  // verdict with zero tolerance
  bool degenerate = false;
  std::map<std::string, double> metadata;
  std::map<std::string, std::string> tags;

  /// Recomputes ratio and the verdicts from lhs, rhs, constant and tolerance.
  void finalize();

  /// True when the stored verdicts agree with the pass predicate.
  bool consistent() const;

  /// Counts toward a run's exit status.
  bool is_verdict() const { return kind != ReportKind::exploration; }
};

/// Pretty-printed JSON object; keys sorted, non-finite numbers as null.
std::string to_json(const InequalityReport& r);
InequalityReport report_from_json(std::string_view text);

/// A JSON document {"reports": [...], <extra string fields>}.
std::string reports_to_json(std::span<const InequalityReport> reports,
                            const std::map<std::string, std::string>& header = {});
std::vector<InequalityReport> reports_from_json(std::string_view text);

std::string csv_header();
std::string to_csv_row(const InequalityReport& r);

}  // namespace sdr
