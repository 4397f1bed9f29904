#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "sdr/error.hpp"
#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"
#include "sdr/transform.hpp"
#include "sdr/verify.hpp"

namespace sdr::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Generator kAllGenerators[] = {Generator::random_step, Generator::gaussian_mix,
                                        Generator::indicator_union, Generator::modulated_bump};

std::string dim_suffix(int d) { return "_d" + std::to_string(d); }

CheckOptions options(const RunConfig& cfg, std::string_view check) {
  CheckOptions opt;
  opt.tolerance = cfg.tolerance_for(check);
  return opt;
}

// lhs = measured error against a fixed bound; passes iff error <= bound
InequalityReport error_report(std::string name, std::string statement, double error, double bound) {
  InequalityReport r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.lhs = error;
  r.rhs = bound;
  r.finalize();
  return r;
}

// passes iff `count` is zero
InequalityReport count_report(std::string name, std::string statement, double count) {
  InequalityReport r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.lhs = count;
  r.rhs = 1.0;
  r.constant_used = 0.0;
  r.finalize();
  return r;
}

template <class Body>
std::vector<InequalityReport> per_trial(std::size_t count, std::size_t threads, Body body) {
  std::vector<InequalityReport> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

GridFunction gaussian(const Grid& g) {
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = std::exp(-kPi * g.center_norm2(i));
  return f;
}

GridFunction ball_indicator(const Grid& g, const std::vector<double>& center, double radius) {
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    double r2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) r2 += (x[k] - center[k]) * (x[k] - center[k]);
    if (r2 <= radius * radius) f.values[i] = 1.0;
  }
  return f;
}

// ---------------------------------------------------------------- rearrange

std::vector<InequalityReport> rearrange_suite(const RunConfig& cfg, std::size_t threads) {
  std::vector<InequalityReport> out;
  for (int d : cfg.dims) {
    struct Trial {
      double norm_error = 0.0;
      double mismatches = 0.0;
      InequalityReport decay;
    };
    std::vector<Trial> trials(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t i) {
      const auto fam = family_for(cfg, kAllGenerators[i % 4], d);
      const GridFunction f = make_trial(fam, i);
      const GridFunction fs = symmetric_rearrange(f);
      Trial t;
      for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
        t.norm_error = std::max(t.norm_error, relative(f.norm_p(p), fs.norm_p(p)));
      const double top = f.norm_p(std::numeric_limits<double>::infinity());
      if (top > 0.0) {
        std::vector<double> ladder;
        for (int k = 0; k < 32; ++k) ladder.push_back(top * (k + 0.5) / 32.0);
        const auto a = distribution_function(f, ladder);
        const auto b = distribution_function(fs, ladder);
        for (std::size_t k = 0; k < ladder.size(); ++k) t.mismatches += a.measures[k] != b.measures[k];
      }
      InequalityReport worst;
      for (double p : {1.0, 2.0}) {
        auto r = check_decay_bound(f, p);
        if (!r.pass || r.ratio > worst.ratio) worst = r;
      }
      t.decay = worst;
      trials[i] = t;
    });
    double norm_error = 0.0, mismatches = 0.0;
    std::vector<InequalityReport> decay;
    for (const auto& t : trials) {
      norm_error = std::max(norm_error, t.norm_error);
      mismatches += t.mismatches;
      decay.push_back(t.decay);
    }
    auto norms = error_report("rearrange_norms" + dim_suffix(d),
                              "rearrangement preserves L^1, L^2 and sup norms", norm_error, 1e-12);
    norms.metadata["trials"] = static_cast<double>(cfg.trials);
    out.push_back(norms);
    auto dist = count_report("rearrange_distribution" + dim_suffix(d),
                             "distribution functions agree on a 32-level ladder", mismatches);
    dist.metadata["trials"] = static_cast<double>(cfg.trials);
    out.push_back(dist);
    out.push_back(worst_of(decay, "rearrange_decay" + dim_suffix(d)));
  }
  return out;
}

// ---------------------------------------------------------------- specfun

std::vector<InequalityReport> specfun_suite(const RunConfig&, std::size_t) {
  std::vector<InequalityReport> out;

  double ball = 0.0;
  for (int d = 1; d <= 5; ++d) ball = std::max(ball, relative(fourier_ball(0.0, d), unit_ball_volume(d)));
  out.push_back(error_report("fourier_ball_origin", "transform of the unit ball at the origin equals its volume",
                             ball, 1e-12));

  // three-term recurrence J_{l-1} + J_{l+1} = (2 l / x) J_l
  double recurrence = 0.0;
  for (double order : {0.5, 1.0, 1.5, 2.5}) {
    for (int k = 1; k <= 500; ++k) {
      const double x = 0.1 * k;
      const double a = bessel_j(order - 1.0, x), b = bessel_j(order + 1.0, x), c = bessel_j(order, x);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(2.0 * order / x * c), 1e-300});
      recurrence = std::max(recurrence, std::abs(a + b - 2.0 * order / x * c) / scale);
    }
  }
  out.push_back(error_report("bessel_recurrence", "three-term recurrence of J on (0, 50]", recurrence, 1e-10));

  out.push_back(error_report("bessel_zero_j01", "first zero of J_0",
                             std::abs(bessel_zero(0.0, 1) - 2.404825557695773), 1e-9));

  for (double nu : {0.5, 1.0, 1.5, 2.5}) {
    const auto areas = wave_areas(nu, 20);
    double violations = 0.0, margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < areas.size(); ++k) {
      violations += !(areas[k + 1] < areas[k]);
      margin = std::min(margin, areas[k] - areas[k + 1]);
    }
    char label[32];
    std::snprintf(label, sizeof label, "makai_nu=%g", nu);
    auto r = count_report(label, "areas of successive arches of |J_nu| decrease", violations);
    r.metadata["areas"] = static_cast<double>(areas.size());
    r.metadata["min_margin"] = margin;
    out.push_back(r);
  }

  for (auto& r : gibbs_check()) out.push_back(r);

  for (int d = 1; d <= 2; ++d) {
    // the cosine moment int_0^1 (1-t^2)^(d-1/2) cos(pi t) dt by Poisson's integral
    const double moment = 0.5 * std::pow(2.0, d) * std::tgamma(d + 0.5) * std::sqrt(kPi) * script_j(d, kPi);
    const double root = 2.0 / (std::pow(2.0 * kPi, 0.5 * d) * std::sqrt(kPi)) * moment;
    const double bessel_route = root * root;
    auto r = error_report("upsilon" + dim_suffix(d), "quadrature constant against its Bessel closed form",
                          relative(upsilon_d(d), bessel_route), 1e-10);
    r.metadata["upsilon"] = upsilon_d(d);
    r.metadata["kappa"] = kappa_bound(d);
    r.metadata["theta_alpha0"] = theta_threshold(d, 0.0);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- inequalities

std::vector<InequalityReport> inequalities_suite(const RunConfig& cfg, std::size_t threads) {
  std::vector<InequalityReport> out;
  const std::size_t n = cfg.trials;
  const std::uint64_t seed = *cfg.seed;
  for (int d : cfg.dims) {
    const auto steps = family_for(cfg, Generator::random_step, d);
    const auto smooth = family_for(cfg, Generator::gaussian_mix, d);
    const auto sets = family_for(cfg, Generator::indicator_union, d);
    const std::string sfx = dim_suffix(d);

    out.push_back(worst_of(per_trial(n, threads,
                                     [&](std::size_t i) {
                                       const GridFunction f = make_trial(steps, i, 0);
                                       if (i == 0) {
                                         const GridFunction c = symmetric_rearrange(f);
                                         return verify_hardy_littlewood(c, c);
                                       }
                                       return verify_hardy_littlewood(f, make_trial(steps, i, 1));
                                     }),
                           "hardy_littlewood" + sfx));

    if (d == 1) {
      const Grid line = Grid::centered(1, 12, 0.25);
      out.push_back(worst_of(per_trial(n, threads,
                                       [&](std::size_t i) {
                                         CounterRng rng(seed, i, 4);
                                         auto draw = [&] {
                                           GridFunction f(line);
                                           for (auto& v : f.values)
                                             if (rng.uniform() < 0.7) v = rng.uniform();
                                           return f;
                                         };
                                         const GridFunction f = draw(), g = draw(), c = draw();
                                         return verify_riesz(f, g, c);
                                       }),
                             "riesz"));
    }

    out.push_back(worst_of(per_trial(n, threads,
                                     [&](std::size_t i) {
                                       return verify_weight(make_trial(smooth, i, 1), make_trial(smooth, i, 0),
                                                            options(cfg, "weight"));
                                     }),
                           "weight" + sfx));
    out.push_back(worst_of(per_trial(n, threads,
                                     [&](std::size_t i) {
                                       return verify_dual_sobolev(make_trial(smooth, i), 1.0,
                                                                  options(cfg, "dual_sobolev"));
                                     }),
                           "dual_sobolev" + sfx));
    for (auto [s, label] : {std::pair{0.5, "lieb_s=1/2"}, std::pair{1.0, "lieb_s=1"}}) {
      out.push_back(worst_of(per_trial(n, threads,
                                       [&, s = s](std::size_t i) {
                                         return verify_lieb(make_trial(smooth, i), s, options(cfg, "lieb"));
                                       }),
                             label + sfx));
    }

    for (auto [alpha, label] : {std::pair{0.0, "prop_ds_alpha=0"}, std::pair{1.0, "prop_ds_alpha=1"}}) {
      const double theta = theta_threshold(d, alpha);
      out.push_back(worst_of(per_trial(n, threads,
                                       [&, alpha = alpha](std::size_t i) {
                                         const GridFunction f = make_trial(sets, i);
                                         const double omega = 0.9 * theta / std::pow(f.support_measure(), 1.0 / d);
                                         return verify_prop_ds(f, alpha, omega, options(cfg, "prop_ds"));
                                       }),
                             label + sfx));
    }

    const std::vector<double> a(d, 0.5), x(d, 0.25);
    out.push_back(worst_of(per_trial(n, threads,
                                     [&](std::size_t i) {
                                       return verify_ds2(make_trial(sets, i), 0.0, 0.5 * d, 1.0, a, x);
                                     }),
                           "ds2" + sfx));
    out.push_back(worst_of(per_trial(n, threads,
                                     [&](std::size_t i) {
                                       return verify_cor_ds(make_trial(sets, i), nullptr, 0.0, 0.5 * d, 1.0);
                                     }),
                           "cor_ds" + sfx));

    const Grid lattice = frequency_lattice(sets.grid());
    const double reach = 0.25 / sets.grid().h;
    std::vector<InequalityReport> conc(n), mont(n);
    parallel_for(n, threads, [&](std::size_t i) {
      StarParams p;
      p.beta = 0.0;
      p.sigma = make_box_union(lattice, reach, seed, i, 2);
      auto r = verify_star_theorems(make_trial(sets, i), p, options(cfg, "montgomery"));
      conc[i] = r.concentration;
      mont[i] = r.montgomery;
    });
    out.push_back(worst_of(conc, "star_concentration" + sfx));
    out.push_back(worst_of(mont, "star_montgomery" + sfx));
  }
  return out;
}

// ---------------------------------------------------------------- montgomery

std::vector<InequalityReport> montgomery_suite(const RunConfig& cfg, std::size_t threads) {
  std::vector<InequalityReport> out;
  const std::uint64_t seed = *cfg.seed;
  for (int d : cfg.dims) {
    const auto base = family_for(cfg, Generator::random_step, d);
    const Grid lattice = frequency_lattice(base.grid());
    const double reach = 0.25 / base.grid().h;
    std::vector<InequalityReport> plain(cfg.trials), weighted(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t i) {
      const auto fam = family_for(cfg, kAllGenerators[i % 4], d);
      const GridFunction f = make_trial(fam, i, 0);
      const GridFunction sigma = make_box_union(lattice, reach, seed, i, 2);
      plain[i] = verify_montgomery(f, sigma, options(cfg, "montgomery"));
      GridFunction w = sigma;
      const GridFunction inner = make_box_union(lattice, 0.5 * reach, seed, i, 3);
      for (std::size_t k = 0; k < w.size(); ++k) w.values[k] += inner.values[k];
      weighted[i] = verify_cor_weight(f, w, options(cfg, "montgomery"));
    });
    out.push_back(worst_of(plain, "montgomery" + dim_suffix(d)));
    out.push_back(worst_of(weighted, "cor_weight" + dim_suffix(d)));
    if (d == 1) {
      const GridFunction f = modulated_bump_scenario(base, 5.0);
      auto r = verify_montgomery(f, interval_indicator(lattice, 4.5, 5.5), options(cfg, "montgomery"));
      r.name = "montgomery_modulated_bump";
      r.statement = "spectral mass near frequency 5 against the unmodulated rearrangement";
      out.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------- schrodinger

std::vector<InequalityReport> schrodinger_suite(const RunConfig& cfg, std::size_t threads) {
  std::vector<InequalityReport> out;
  const std::vector<double> times = {1.0, 2.0, 4.0, 8.0, 16.0};
  for (int d : cfg.dims) {
    const std::string sfx = dim_suffix(d);
    const Grid g = schrodinger_grid(d, cfg.n.value_or(0));
    const GridFunction v0 = gaussian(g);
    const double norm0 = v0.norm_p(2.0);

    struct AtTime {
      double mass = 0.0, group = 0.0, closed = 0.0;
      InequalityReport dispersive;
      std::vector<InequalityReport> part1, part2, extras;
    };
    std::vector<AtTime> at(times.size());
    parallel_for(times.size(), threads, [&](std::size_t k) {
      const double t = times[k];
      AtTime a;
      const GridFunction v = schrodinger_evolve(v0, t);
      a.mass = relative(v.norm_p(2.0), norm0);
      const GridFunction twice = schrodinger_evolve(schrodinger_evolve(v0, 0.5 * t), 0.5 * t);
      CompensatedSum diff;
      for (std::size_t i = 0; i < v.size(); ++i) diff.add(std::norm(twice.values[i] - v.values[i]));
      a.group = std::sqrt(diff.value() * g.cell_measure()) / norm0;
      a.dispersive = dispersive_check(v0, t, std::numeric_limits<double>::infinity(), 1e-9);
      // |v(0, t)| = (1 + t^2)^(-d/4) and ||v0||_1 = 1
      const double closed = std::pow(t, 0.5 * d) * std::pow(1.0 + t * t, -0.25 * d);
      a.closed = std::abs(a.dispersive.ratio - closed);
      const std::vector<double> origin(d, 0.0), shifted(d, 1.0);
      for (auto [center, radius] : {std::pair{origin, 0.5}, std::pair{origin, 1.0}, std::pair{origin, 2.0},
                                    std::pair{shifted, 1.0}}) {
        auto r = verify_schrodinger_bounds(v0, t, ball_indicator(g, center, radius), 0.5 * d,
                                           options(cfg, "schrodinger"));
        a.part1.push_back(r.part1);
        a.part2.push_back(r.part2);
        for (auto& e : r.extras) a.extras.push_back(e);
      }
      at[k] = std::move(a);
    });

    double mass = 0.0, group = 0.0, closed = 0.0;
    std::vector<InequalityReport> disp, part1, part2;
    std::vector<std::vector<InequalityReport>> extras;
    for (auto& a : at) {
      mass = std::max(mass, a.mass);
      group = std::max(group, a.group);
      closed = std::max(closed, a.closed);
      disp.push_back(a.dispersive);
      part1.insert(part1.end(), a.part1.begin(), a.part1.end());
      part2.insert(part2.end(), a.part2.begin(), a.part2.end());
      for (std::size_t j = 0; j < a.extras.size(); ++j) {
        if (extras.size() <= j) extras.emplace_back();
        extras[j].push_back(a.extras[j]);
      }
    }
    out.push_back(error_report("schrodinger_mass" + sfx, "L^2 mass is conserved", mass, 1e-9));
    out.push_back(error_report("schrodinger_group_law" + sfx, "evolution by t/2 twice equals evolution by t",
                               group, 1e-9));
    out.push_back(worst_of(disp, "dispersive" + sfx));
    out.push_back(error_report("dispersive_closed_form" + sfx,
                               "Gaussian dispersive ratio against its closed form, t = 1..16", closed, 1e-3));
    out.push_back(worst_of(part1, "schrodinger_part1" + sfx));
    out.push_back(worst_of(part2, "schrodinger_part2" + sfx));
    // extras come in a fixed order per Sigma; merge by name
    std::vector<std::string> names;
    std::vector<std::vector<InequalityReport>> by_name;
    for (const auto& column : extras)
      for (const auto& r : column) {
        auto it = std::find(names.begin(), names.end(), r.name);
        if (it == names.end()) {
          names.push_back(r.name);
          by_name.emplace_back();
          it = names.end() - 1;
        }
        by_name[static_cast<std::size_t>(it - names.begin())].push_back(r);
      }
    for (std::size_t j = 0; j < names.size(); ++j) out.push_back(worst_of(by_name[j], names[j] + sfx));
  }
  return out;
}

// ---------------------------------------------------------------- conjecture1

std::vector<InequalityReport> conjecture_suite(const RunConfig& cfg, std::size_t threads) {
  std::vector<InequalityReport> out;
  for (int d : cfg.dims) {
    const auto fam = family_for(cfg, Generator::random_step, d);
    auto ex = explore_conjecture1(fam, {}, threads);
    for (auto& r : ex.reports) {
      r.name += dim_suffix(d);
      r.metadata["reformulation_gap"] = ex.reformulation_gap;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::size_t thread_budget() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VERIFY_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min(threads, static_cast<std::size_t>(cap));
  }
  return threads;
}

TrialFamily family_for(const RunConfig& cfg, Generator g, int d) {
  TrialFamily fam = default_family(g, d, cfg.seed.value_or(0), cfg.trials);
  if (cfg.n) fam.n = *cfg.n;
  return fam;
}

InequalityReport worst_of(const std::vector<InequalityReport>& trials, const std::string& name) {
  require(!trials.empty(), ErrorKind::invalid_argument, "no trials to summarize");
  std::size_t worst = 0, failures = 0;
  auto score = [](const InequalityReport& r) {
    if (r.kind != ReportKind::bound || r.constant_used <= 0.0) return r.ratio;
    return r.ratio / r.constant_used;
  };
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& r = trials[i];
    if (!r.pass) ++failures;
    const auto& w = trials[worst];
    if (w.pass ? (!r.pass || score(r) > score(w)) : false) worst = i;
  }
  InequalityReport out = trials[worst];
  out.name = name;
  out.metadata["trials"] = static_cast<double>(trials.size());
  out.metadata["failures"] = static_cast<double>(failures);
  out.metadata["worst_trial"] = static_cast<double>(worst);
  return out;
}

GridFunction interval_indicator(const Grid& lattice, double lo, double hi) {
  require(lattice.dim() == 1, ErrorKind::invalid_argument, "interval indicator is one-dimensional");
  GridFunction s(lattice);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double c = lattice.center(0, i);
    if (c >= lo && c <= hi) s.values[i] = 1.0;
  }
  return s;
}

GridFunction modulated_bump_scenario(const TrialFamily& family, double omega) {
  require(family.d == 1, ErrorKind::invalid_argument, "the modulated bump scenario is one-dimensional");
  const Grid g = family.grid();
  GridFunction f(g);
  constexpr double radius = 2.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = g.center(0, i);
    const double u = x * x / (radius * radius);
    if (u >= 1.0) continue;
    f.values[i] = std::exp(-1.0 / (1.0 - u)) * std::polar(1.0, 2.0 * kPi * std::fmod(omega * x, 1.0));
  }
  return f;
}

Grid schrodinger_grid(int d, std::size_t n) {
  require(d == 1 || d == 2, ErrorKind::invalid_argument, "the Schroedinger sweep supports d = 1, 2");
  // box of side 64: at t = 16 the Gaussian is below 1e-5 at the edge
  constexpr double side = 64.0;
  if (n == 0) n = d == 1 ? 1024 : 256;
  const double h = side / static_cast<double>(n);
  Grid g;
  g.shape.assign(d, n);
  g.h = h;
  g.origin.assign(d, -(static_cast<double>(n / 2) + 0.5) * h);
  return g;
}

std::vector<InequalityReport> run_suite(std::string_view suite, const RunConfig& cfg, std::size_t threads) {
  if (suite == "rearrange") return rearrange_suite(cfg, threads);
  if (suite == "specfun") return specfun_suite(cfg, threads);
  if (suite == "inequalities") return inequalities_suite(cfg, threads);
  if (suite == "montgomery") return montgomery_suite(cfg, threads);
  if (suite == "schrodinger") return schrodinger_suite(cfg, threads);
  if (suite == "conjecture1") return conjecture_suite(cfg, threads);
  fail(ErrorKind::invalid_argument, "unknown suite '" + std::string(suite) + "'");
}

}  // namespace sdr::cli
