#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "sdr/error.hpp"
#include "sdr/grid_io.hpp"
#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"
#include "sdr/transform.hpp"
#include "suites.hpp"

namespace sdr::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
  return s;
}

std::string coordinate_header(std::size_t d, const std::string& stem) {
  if (d == 1) return stem;
  std::string h;
  for (std::size_t k = 0; k < d; ++k) h += (k ? "," : "") + stem + std::to_string(k + 1);
  return h;
}

void write_coordinates(std::ostream& out, const std::vector<double>& x) {
  for (std::size_t k = 0; k < x.size(); ++k) out << (k ? "," : "") << num(x[k]);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::resource, "cannot write " + path.string());
  f << text;
  if (!f) fail(ErrorKind::resource, "cannot write " + path.string());
}

InequalityReport error_report(const std::string& suite, const Error& e) {
  InequalityReport r;
  r.name = suite + "_error";
  r.statement = e.what();
  r.lhs = 1.0;
  r.rhs = 0.0;
  r.finalize();
  r.tags["error_kind"] = std::string(to_string(e.kind()));
  r.tags["suite"] = suite;
  return r;
}

struct RunFlags {
  std::string config;
  std::vector<std::pair<std::string, std::string>> settings;  // in command-line order
};

int run_suites(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (!flags.config.empty()) cfg = load_config(flags.config);
    for (const auto& [key, value] : flags.settings) {
      try {
        apply_setting(cfg, key, value);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("--") + e.what());
      }
    }
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "verify: config error";
    if (e.line() > 0) err << " at line " << e.line() << ", column " << e.column();
    err << ": " << e.what() << "\n";
    return kExitUsage;
  }

  const std::size_t threads = thread_budget();
  std::vector<InequalityReport> reports;
  bool errored = false;
  for (const auto& suite : cfg.suites) {
    try {
      auto part = run_suite(suite, cfg, threads);
      reports.insert(reports.end(), part.begin(), part.end());
    } catch (const Error& e) {
      errored = true;
      reports.push_back(error_report(suite, e));
      err << "verify: " << suite << ": " << e.what() << "\n";
    }
  }

  std::string dims;
  for (int d : cfg.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  const std::map<std::string, std::string> header = {
      {"timestamp", utc_timestamp()},
      {"suites", join(cfg.suites)},
      {"dims", dims},
      {"n", cfg.n ? std::to_string(*cfg.n) : "default"},
      {"seed", std::to_string(*cfg.seed)},
      {"trials", std::to_string(cfg.trials)},
  };
  std::string csv = csv_header() + "\n";
  for (const auto& r : reports) csv += to_csv_row(r) + "\n";
  try {
    const std::filesystem::path dir(cfg.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", reports_to_json(reports, header));
    write_file(dir / "summary.csv", csv);
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << "\n";
    return kExitFail;
  }

  for (const auto& r : reports) {
    const char* verdict = !r.is_verdict() ? "INFO" : (r.pass ? "PASS" : "FAIL");
    out << verdict << "  " << r.name << "  ratio=" << num(r.ratio);
    if (r.kind == ReportKind::bound) out << "  constant=" << num(r.constant_used);
    out << "\n";
  }
  const int status = errored ? kExitFail : exit_status(reports);
  out << (status == kExitPass ? "all checks passed" : "some checks failed") << " (" << reports.size()
      << " reports in " << cfg.out << ")\n";
  return status;
}

void table_specfun(std::ostream& out, double order, double xmax, double step) {
  require(step > 0.0 && xmax > 0.0, ErrorKind::invalid_argument, "--step and --xmax must be positive");
  require(order >= -0.5, ErrorKind::invalid_argument, "--order must be >= -1/2");
  out << "order,x,J,scriptJ\n";
  const auto count = static_cast<std::size_t>(std::floor(xmax / step * (1.0 + 1e-12)));
  for (std::size_t k = 1; k <= count; ++k) {
    const double x = static_cast<double>(k) * step;
    out << num(order) << "," << num(x) << "," << num(bessel_j(order, x)) << "," << num(script_j(order, x)) << "\n";
  }
}

void table_profile(std::ostream& out, const std::string& input) {
  const RadialProfile p = rearrange_to_profile(load_any(input));
  out << "r,level\n";
  if (p.levels.empty()) return;
  out << num(0.0) << "," << num(p.levels.front()) << "\n";
  for (std::size_t i = 0; i < p.levels.size(); ++i) out << num(p.radii[i + 1]) << "," << num(p.levels[i]) << "\n";
}

void table_spectrum(std::ostream& out, const std::string& input, std::size_t pad) {
  const Spectrum F = forward_transform(load_any(input), pad);
  out << coordinate_header(F.dim(), "xi") << ",abs\n";
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    write_coordinates(out, F.frequency(i));
    out << "," << num(std::abs(F.values[i])) << "\n";
  }
}

void write_profile_csv(std::ostream& out, const GridFunction& f, bool with_phase) {
  out << coordinate_header(f.dim(), "x") << (with_phase ? ",abs,phase\n" : ",level\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    write_coordinates(out, f.grid.center_of(i));
    out << "," << num(std::abs(f.values[i]));
    if (with_phase) out << "," << num(std::arg(f.values[i]));
    out << "\n";
  }
}

int with_errors(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitPass;
  } catch (const Error& e) {
    err << "verify: " << e.what() << "\n";
    return e.kind() == ErrorKind::invalid_argument ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace

int exit_status(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.is_verdict() && !r.pass) return kExitFail;
  return kExitPass;
}

std::string strip_timestamp(const std::string& report_json) {
  auto doc = nlohmann::json::parse(report_json);
  doc.erase("timestamp");
  return doc.dump(2);
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric decreasing rearrangement toolkit and inequality verifier", "verify"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run_cmd = app.add_subcommand("run", "Run verification suites and write report.json and summary.csv");
  run_cmd->add_option("--config", flags.config, "Config file: 'key = value' lines or a JSON object");
  const std::pair<const char*, const char*> run_flags[] = {
      {"suite", "Comma-separated suites or 'all'"},
      {"dim", "Dimensions to run, from {1,2}"},
      {"n", "Cells per axis (power of two, 8..8192)"},
      {"seed", "Master seed (required)"},
      {"trials", "Trials per randomized check"},
      {"out", "Output directory"},
      {"tol", "Tolerance override: value or name=value,..."},
  };
  for (const auto& [key, help] : run_flags) {
    run_cmd->add_option_function<std::string>(
        std::string("--") + key, [&flags, key = key](const std::string& v) { flags.settings.emplace_back(key, v); },
        help);
  }

  auto* table = app.add_subcommand("table", "Print plot-ready CSV");
  table->require_subcommand(1);
  double order = 0.0, xmax = 20.0, step = 0.01;
  std::string input;
  std::size_t pad = kDefaultPad;
  auto* t_specfun = table->add_subcommand("specfun", "order, x, J_order(x), J_order(x)/x^order");
  t_specfun->add_option("--order", order, "Bessel order (>= -1/2)")->required();
  t_specfun->add_option("--xmax", xmax, "Largest x");
  t_specfun->add_option("--step", step, "Spacing of x");
  auto* t_profile = table->add_subcommand("profile", "Radial profile of the rearrangement: r, level");
  t_profile->add_option("--input", input, "Grid function file")->required();
  auto* t_spectrum = table->add_subcommand("spectrum", "Modulus of the Fourier transform: xi, |f^|");
  t_spectrum->add_option("--input", input, "Grid function file")->required();
  t_spectrum->add_option("--pad", pad, "Zero-padding factor")->check(CLI::PositiveNumber);

  std::string output;
  bool star = false;
  auto* rearrange_cmd = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement of a grid function");
  rearrange_cmd->add_option("--input", input, "Grid function file")->required();
  rearrange_cmd->add_option("--output", output, "Write the result as a grid function file instead of CSV");
  rearrange_cmd->add_flag("--star", star, "One-dimensional rearrangement onto [-m/2, m/2]");

  double t = 1.0;
  auto* evolve_cmd = app.add_subcommand("evolve", "Free Schroedinger evolution: x, |v|, phase");
  evolve_cmd->add_option("--input", input, "Initial datum file")->required();
  evolve_cmd->add_option("--t", t, "Evolution time (> 0)")->required();
  evolve_cmd->add_option("--output", output, "Also write v(t) as a grid function file");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (run_cmd->parsed()) return run_suites(flags, out, err);
  if (t_specfun->parsed()) return with_errors(err, [&] { table_specfun(out, order, xmax, step); });
  if (t_profile->parsed()) return with_errors(err, [&] { table_profile(out, input); });
  if (t_spectrum->parsed()) return with_errors(err, [&] { table_spectrum(out, input, pad); });
  if (rearrange_cmd->parsed()) {
    return with_errors(err, [&] {
      const GridFunction f = load_any(input);
      const GridFunction g = star ? star_rearrange_1d(f) : symmetric_rearrange(f);
      if (!output.empty())
        save_grid_function(output, g);
      else
        write_profile_csv(out, g, false);
    });
  }
  if (evolve_cmd->parsed()) {
    return with_errors(err, [&] {
      const GridFunction v = schrodinger_evolve(load_any(input), t);
      if (!output.empty()) save_grid_function(output, v);
      write_profile_csv(out, v, true);
    });
  }
  return kExitUsage;
}

}  // namespace sdr::cli
