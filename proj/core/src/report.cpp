#include "sdr/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "sdr/error.hpp"

namespace sdr {
namespace {

using nlohmann::json;

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double read_number(const json& j, double if_null) {
  if (j.is_null()) return if_null;
  return j.get<double>();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_object(const InequalityReport& r) {
  json meta = json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = number(v);
  for (const auto& [k, v] : r.tags) meta[k] = v;
  return json{{"name", r.name},
              {"statement", r.statement},
              {"kind", std::string(to_string(r.kind))},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"constant_used", number(r.constant_used)},
              {"ratio", number(r.ratio)},
              {"tolerance", number(r.tolerance)},
              {"pass", r.pass},
              {"pass_raw", r.pass_raw},
              {"degenerate", r.degenerate},
              {"metadata", meta}};
}

InequalityReport from_object(const json& j) {
  InequalityReport r;
  constexpr double inf = std::numeric_limits<double>::infinity();
  r.name = j.at("name").get<std::string>();
  r.statement = j.value("statement", std::string{});
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "bound")
    r.kind = ReportKind::bound;
  else if (kind == "empirical")
    r.kind = ReportKind::empirical;
  else if (kind == "exploration")
    r.kind = ReportKind::exploration;
  else
    fail(ErrorKind::invalid_argument, "unknown report kind '" + kind + "'");
  r.lhs = read_number(j.at("lhs"), inf);
  r.rhs = read_number(j.at("rhs"), inf);
  r.constant_used = read_number(j.at("constant_used"), inf);
  r.ratio = read_number(j.at("ratio"), inf);
  r.tolerance = read_number(j.at("tolerance"), inf);
  r.pass = j.at("pass").get<bool>();
  r.pass_raw = j.value("pass_raw", r.pass);
  r.degenerate = j.value("degenerate", false);
  if (j.contains("metadata")) {
    for (const auto& [k, v] : j.at("metadata").items()) {
      if (v.is_string())
        r.tags[k] = v.get<std::string>();
      else
        r.metadata[k] = read_number(v, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return r;
}

}  // namespace

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::bound: return "bound";
    case ReportKind::empirical: return "empirical";
    case ReportKind::exploration: return "exploration";
  }
  return "bound";
}

void InequalityReport::finalize() {
  degenerate = !(rhs > 0.0);
  if (rhs > 0.0)
    ratio = lhs / rhs;
  else
    ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

  if (kind != ReportKind::bound) constant_used = ratio;
  pass_raw = lhs <= constant_used * rhs || (lhs <= 0.0 && rhs >= 0.0);
  pass = pass_raw || lhs <= constant_used * rhs * (1.0 + tolerance);
  if (kind != ReportKind::bound) {
    // a measured constant passes as long as it is a number
    pass_raw = pass = std::isfinite(ratio);
  }
  if (!std::isfinite(lhs) || !std::isfinite(rhs) || rhs < 0.0) pass = pass_raw = false;
}

bool InequalityReport::consistent() const {
  InequalityReport copy = *this;
  copy.finalize();
  return copy.pass == pass && copy.pass_raw == pass_raw && copy.degenerate == degenerate;
}

std::string to_json(const InequalityReport& r) { return to_object(r).dump(2); }

InequalityReport report_from_json(std::string_view text) {
  try {
    return from_object(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("bad report JSON: ") + e.what());
  }
}

std::string reports_to_json(std::span<const InequalityReport> reports,
                            const std::map<std::string, std::string>& header) {
  json doc = json::object();
  for (const auto& [k, v] : header) doc[k] = v;
  json list = json::array();
  for (const auto& r : reports) list.push_back(to_object(r));
  doc["reports"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<InequalityReport> reports_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    std::vector<InequalityReport> out;
    for (const auto& j : doc.at("reports")) out.push_back(from_object(j));
    return out;
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("bad report JSON: ") + e.what());
  }
}

std::string csv_header() {
  return "name,kind,lhs,rhs,constant_used,ratio,tolerance,pass,pass_raw,degenerate";
}

std::string to_csv_row(const InequalityReport& r) {
  std::string row = r.name;
  row += ',';
  row += to_string(r.kind);
  for (double v : {r.lhs, r.rhs, r.constant_used, r.ratio, r.tolerance}) {
    row += ',';
    row += fmt(v);
  }
  row += r.pass ? ",1" : ",0";
  row += r.pass_raw ? ",1" : ",0";
  row += r.degenerate ? ",1" : ",0";
  return row;
}

}  // namespace sdr
