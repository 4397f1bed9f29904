#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdr/error.hpp"
#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"
#include "sdr/verify.hpp"

namespace sdr {
namespace {

double budget(const CheckOptions& opt, double K, double h) { return opt.tolerance ? *opt.tolerance : K * h; }

void stamp(InequalityReport& r, const GridFunction& f, const CheckOptions& opt) {
  r.metadata["d"] = static_cast<double>(f.dim());
  r.metadata["h"] = f.grid.h;
  r.metadata["pad"] = static_cast<double>(opt.pad);
}

Spectrum spectrum_of_rearrangement(const GridFunction& f, std::size_t pad) {
  return forward_transform(symmetric_rearrange(f), pad);
}

// sum over the frequency lattice of w(|xi|^2) * value(i), times dxi^d
template <class W, class V>
double lattice_integral(const Spectrum& F, W&& weight, V&& value) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < F.values.size(); ++i) acc.add(weight(F.grid.center_norm2(i)) * value(i));
  return acc.value() * F.cell_measure();
}

double window_reach(const Spectrum& F) { return (static_cast<double>(F.grid.shape[0] / 2) - 1.0) * F.grid.h; }

// Mass of |F|^2 on the ball of the given measure about the origin: the
// lattice points nearest the origin, the last one weighted by the
// fractional part of measure / dxi^d.
double ball_mass(const Spectrum& F, double measure, const std::vector<std::size_t>& order) {
  const double cell = F.cell_measure();
  const double count = measure / cell;
  const auto full = static_cast<std::size_t>(std::floor(count));
  const double frac = count - static_cast<double>(full);
  const double tau = set_rearrange(measure, static_cast<int>(F.dim()));
  if (full + (frac > 0.0 ? 1 : 0) > order.size() || tau > window_reach(F)) {
    std::ostringstream msg;
    msg << "ball of measure " << measure << " (radius " << tau << ") does not fit the frequency window "
        << window_reach(F);
    fail(ErrorKind::range, msg.str());
  }
  CompensatedSum acc;
  for (std::size_t k = 0; k < full; ++k) acc.add(std::norm(F.values[order[k]]));
  if (frac > 0.0) acc.add(frac * std::norm(F.values[order[full]]));
  return acc.value() * cell;
}

struct SetMembership {
  std::vector<char> inside;  // per lattice point
  double measure = 0.0;      // |Sigma| from the set's own grid
};

SetMembership membership(const Spectrum& F, const GridFunction& sigma) {
  require(sigma.dim() == F.dim(), ErrorKind::invalid_argument, "Sigma lives in the wrong dimension");
  for (auto v : sigma.values)
    require(v == Complex(0.0) || v == Complex(1.0), ErrorKind::invalid_argument, "Sigma must be {0,1}-valued");
  SetMembership m;
  m.measure = sigma.support_measure();
  require(m.measure > 0.0, ErrorKind::invalid_argument, "Sigma must have positive measure");
  const double edge = (static_cast<double>(F.grid.shape[0] / 2) - 0.5) * F.grid.h;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma.values[i] == Complex(0.0)) continue;
    for (double c : sigma.grid.center_of(i)) {
      if (std::abs(c) > edge) {
        std::ostringstream msg;
        msg << "Sigma reaches |xi_k| = " << std::abs(c) << " outside the frequency window " << edge;
        fail(ErrorKind::range, msg.str());
      }
    }
  }
  m.inside.assign(F.values.size(), 0);
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    const auto xi = F.grid.center_of(i);
    if (auto cell = sigma.grid.locate(xi)) m.inside[i] = sigma.values[*cell] != Complex(0.0);
  }
  return m;
}

double set_mass(const Spectrum& F, const std::vector<char>& inside) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < F.values.size(); ++i)
    if (inside[i]) acc.add(std::norm(F.values[i]));
  return acc.value() * F.cell_measure();
}

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

Sides montgomery_sides(const Spectrum& F, const Spectrum& Fstar, const std::vector<std::size_t>& order,
                       const SetMembership& set) {
  return {set_mass(F, set.inside), ball_mass(Fstar, set.measure, order)};
}

InequalityReport montgomery_report(const GridFunction& f, const Sides& s, double measure,
                                   const CheckOptions& opt) {
  const int d = static_cast<int>(f.dim());
  InequalityReport r;
  r.name = "montgomery";
  r.statement = "Montgomery-type spectral concentration against the rearrangement";
  r.lhs = s.lhs;
  r.rhs = s.rhs;
  r.constant_used = kappa_bound(d);
  r.tolerance = budget(opt, tolerance::kMontgomery, f.grid.h);
  stamp(r, f, opt);
  r.metadata["sigma_measure"] = measure;
  r.metadata["tau"] = set_rearrange(measure, d);
  r.metadata["kappa"] = r.constant_used;
  r.finalize();
  r.metadata["kappa_needed"] = r.ratio;
  return r;
}

KernelSpec kernel(int d, double alpha, double omega, std::vector<double> center = {}) {
  KernelSpec k;
  k.d = d;
  k.alpha = alpha;
  k.omega = omega;
  k.center = std::move(center);
  return k;
}

}  // namespace

Grid frequency_lattice(const Grid& source, std::size_t pad) {
  require(pad >= 1, ErrorKind::invalid_argument, "padding factor must be >= 1");
  source.validate();
  const std::size_t longest = *std::max_element(source.shape.begin(), source.shape.end());
  std::size_t n = 1;
  while (n < longest) n <<= 1;
  n *= pad;
  Grid g;
  g.shape.assign(source.dim(), n);
  g.h = 1.0 / (static_cast<double>(n) * source.h);
  g.origin.assign(source.dim(), -(static_cast<double>(n / 2) + 0.5) * g.h);
  return g;
}

InequalityReport verify_weight(const GridFunction& chi, const GridFunction& f, const CheckOptions& opt) {
  require(chi.grid.same_layout(f.grid), ErrorKind::invalid_argument, "weight check needs a common grid");
  const Spectrum C = forward_transform(chi, opt.pad);
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Cs = spectrum_of_rearrangement(chi, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  CompensatedSum re, im, rhs;
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    const Complex l = C.values[i] * std::norm(F.values[i]);
    re.add(l.real());
    im.add(l.imag());
    rhs.add(Cs.values[i].real() * std::norm(Fs.values[i]));
  }
  const double cell = F.cell_measure();
  InequalityReport r;
  r.name = "weight";
  r.statement = "weighted spectral energy against the rearrangements";
  r.lhs = std::abs(Complex(re.value(), im.value())) * cell;
  r.rhs = rhs.value() * cell;
  r.tolerance = budget(opt, tolerance::kWeight, f.grid.h);
  stamp(r, f, opt);
  r.finalize();
  return r;
}

InequalityReport verify_dual_sobolev(const GridFunction& f, double s, const CheckOptions& opt) {
  require(s > 0.0, ErrorKind::invalid_argument, "negative-order Sobolev check needs s > 0");
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  auto w = [s](double r2) { return std::pow(1.0 + r2, -s); };
  InequalityReport r;
  r.name = "dual_sobolev";
  r.statement = "H^{-s} energy increases under rearrangement";
  r.lhs = lattice_integral(F, w, [&](std::size_t i) { return std::norm(F.values[i]); });
  r.rhs = lattice_integral(Fs, w, [&](std::size_t i) { return std::norm(Fs.values[i]); });
  r.tolerance = budget(opt, tolerance::kDualSobolev, f.grid.h);
  stamp(r, f, opt);
  r.metadata["s"] = s;
  r.finalize();
  return r;
}

InequalityReport verify_lieb(const GridFunction& f, double s, const CheckOptions& opt) {
  require(s > 0.0 && s <= 1.0, ErrorKind::invalid_argument, "smoothness check needs 0 < s <= 1");
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  auto homogeneous = [s](double r2) { return std::pow(r2, s); };
  auto inhomogeneous = [s](double r2) { return std::pow(1.0 + r2, s); };
  auto energy_f = [&](std::size_t i) { return std::norm(F.values[i]); };
  auto energy_s = [&](std::size_t i) { return std::norm(Fs.values[i]); };
  InequalityReport r;
  r.name = "lieb";
  r.statement = "homogeneous H^s seminorm decreases under rearrangement";
  r.lhs = lattice_integral(Fs, homogeneous, energy_s);
  r.rhs = lattice_integral(F, homogeneous, energy_f);
  r.tolerance = budget(opt, tolerance::kLieb, f.grid.h);
  stamp(r, f, opt);
  r.metadata["s"] = s;
  const double hs_star = lattice_integral(Fs, inhomogeneous, energy_s);
  const double hs = lattice_integral(F, inhomogeneous, energy_f);
  const double c_s = std::pow(2.0, 0.5 * (1.0 - s));
  r.metadata["hs_norm_rearranged"] = std::sqrt(hs_star);
  r.metadata["hs_norm"] = std::sqrt(hs);
  r.metadata["C_s"] = c_s;
  const double packaged = hs > 0.0 ? std::sqrt(hs_star / hs) : 0.0;
  r.metadata["packaged_ratio"] = packaged;
  r.metadata["packaged_pass"] = packaged <= c_s * (1.0 + r.tolerance) ? 1.0 : 0.0;
  r.finalize();
  return r;
}

InequalityReport verify_prop_ds(const GridFunction& f, double alpha, double omega, const CheckOptions& opt) {
  const int d = static_cast<int>(f.dim());
  const KernelSpec spec = kernel(d, alpha, omega);
  spec.validate();
  const double S = f.support_measure();
  const double theta = theta_threshold(d, alpha);
  const double probe = omega * std::pow(S, 1.0 / d);
  if (probe > theta) {
    std::ostringstream msg;
    msg << "Omega S^(1/d) = " << probe << " exceeds the threshold theta(" << d << ", " << alpha << ") = " << theta;
    fail(ErrorKind::precondition, msg.str());
  }
  const GridFunction fs = symmetric_rearrange(f);
  CompensatedSum re, im, rhs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double k = m_alpha_hat(omega * std::sqrt(f.grid.center_norm2(i)), spec);
    re.add(k * f.values[i].real());
    im.add(k * f.values[i].imag());
    rhs.add(k * fs.values[i].real());
  }
  const double cell = f.grid.cell_measure();
  InequalityReport r;
  r.name = "prop_ds";
  r.statement = "Bochner-Riesz mean at the origin increases under rearrangement (small support)";
  r.lhs = std::abs(Complex(re.value(), im.value())) * cell;
  r.rhs = rhs.value() * cell;
  r.tolerance = budget(opt, tolerance::kPropDs, f.grid.h);
  stamp(r, f, opt);
  r.metadata["alpha"] = alpha;
  r.metadata["omega"] = omega;
  r.metadata["support_measure"] = S;
  r.metadata["theta"] = theta;
  r.metadata["omega_S_1d"] = probe;
  r.finalize();
  return r;
}

InequalityReport verify_ds2(const GridFunction& f, double alpha, double beta, double omega,
                            const std::vector<double>& a, const std::vector<double>& x, const CheckOptions& opt) {
  const int d = static_cast<int>(f.dim());
  require(alpha > -0.5, ErrorKind::invalid_argument, "alpha must exceed -1/2");
  require(beta >= 0.5 * d - 1.0, ErrorKind::invalid_argument, "beta must be at least d/2 - 1");
  require(omega > 0.0, ErrorKind::invalid_argument, "Omega must be positive");
  const std::vector<double> origin(d, 0.0);
  const std::vector<double> at = x.empty() ? origin : x;
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  const double S = f.support_measure();
  const double psi = psi_factor(std::pow(omega, d) * S, d, alpha);
  InequalityReport r;
  r.name = "ds2";
  r.statement = "Bochner-Riesz concentration bound, uniform in modulation and translation";
  r.kind = ReportKind::empirical;
  r.lhs = std::abs(bochner_riesz_functional(F, kernel(d, alpha, omega, a), at));
  r.rhs = psi * bochner_riesz_functional(Fs, kernel(d, beta, omega), origin).real();
  stamp(r, f, opt);
  r.metadata["alpha"] = alpha;
  r.metadata["beta"] = beta;
  r.metadata["omega"] = omega;
  r.metadata["support_measure"] = S;
  r.metadata["psi"] = psi;
  r.finalize();
  return r;
}

InequalityReport verify_cor_ds(const GridFunction& f, const GridFunction* weight, double alpha, double beta,
                               double omega, const CheckOptions& opt) {
  const int d = static_cast<int>(f.dim());
  require(alpha > -0.5, ErrorKind::invalid_argument, "alpha must exceed -1/2");
  require(beta >= 0.5 * d, ErrorKind::invalid_argument, "beta must be at least d/2");
  require(omega > 0.0, ErrorKind::invalid_argument, "Omega must be positive");
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  const std::vector<double> origin(d, 0.0);
  const double S = f.support_measure();
  const double od = std::pow(omega, d);
  const double growth = std::pow(1.0 + od * S, 0.5 * d);
  const double base = bochner_riesz_functional(Fs, kernel(d, beta, omega), origin).real();

  InequalityReport r;
  r.name = "cor_ds";
  r.statement = "weighted L^1 spectral bound against the rearrangement";
  r.kind = ReportKind::empirical;
  stamp(r, f, opt);
  if (!weight) {
    if (omega > window_reach(F)) fail(ErrorKind::range, "kernel support reaches the frequency window edge");
    const double inv = 1.0 / (omega * omega);
    r.lhs = lattice_integral(
                F, [&](double r2) { return r2 * inv < 1.0 ? std::pow(1.0 - r2 * inv, alpha) : 0.0; },
                [&](std::size_t i) { return std::abs(F.values[i]); }) /
            od;
    r.rhs = growth * base;
  } else {
    require(weight->dim() == f.dim(), ErrorKind::invalid_argument, "weight lives in the wrong dimension");
    const double edge = (static_cast<double>(F.grid.shape[0] / 2) - 0.5) * F.grid.h;
    for (std::size_t i = 0; i < weight->size(); ++i) {
      if (weight->values[i] == Complex(0.0)) continue;
      for (double c : weight->grid.center_of(i))
        if (std::abs(c) * omega > edge) fail(ErrorKind::range, "weight support reaches the frequency window edge");
    }
    CompensatedSum acc;
    std::vector<double> eta(f.dim());
    for (std::size_t i = 0; i < F.values.size(); ++i) {
      const auto xi = F.grid.center_of(i);
      for (std::size_t k = 0; k < eta.size(); ++k) eta[k] = xi[k] / omega;
      if (auto cell = weight->grid.locate(eta)) acc.add(std::abs(F.values[i]) * std::abs(weight->values[*cell]));
    }
    r.lhs = acc.value() * F.cell_measure();
    const double n1 = weight->norm_p(1.0), n2 = weight->norm_p(2.0);
    const double norms = std::pow(std::pow(n1, 2.0 / d) + std::pow(n2, 2.0 / d), 0.5 * d);
    r.rhs = norms * growth * od * base;
    r.metadata["weight_norm_factor"] = norms;
  }
  r.metadata["alpha"] = alpha;
  r.metadata["beta"] = beta;
  r.metadata["omega"] = omega;
  r.metadata["support_measure"] = S;
  r.finalize();
  return r;
}

InequalityReport verify_montgomery(const GridFunction& f, const GridFunction& sigma, const CheckOptions& opt) {
  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  const SetMembership set = membership(F, sigma);
  const auto order = distance_order(Fs.grid);
  return montgomery_report(f, montgomery_sides(F, Fs, order, set), set.measure, opt);
}

InequalityReport verify_cor_weight(const GridFunction& f, const GridFunction& weight, const CheckOptions& opt) {
  std::vector<double> levels;
  for (auto v : weight.values) {
    require(v.imag() == 0.0 && v.real() >= 0.0, ErrorKind::invalid_argument, "weight must be real and nonnegative");
    if (v.real() > 0.0) levels.push_back(v.real());
  }
  require(!levels.empty(), ErrorKind::invalid_argument, "weight vanishes identically");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const Spectrum F = forward_transform(f, opt.pad);
  const Spectrum Fs = spectrum_of_rearrangement(f, opt.pad);
  const auto order = distance_order(Fs.grid);
  // psi = sum_i (l_i - l_{i-1}) 1{psi >= l_i}, and (|psi|*) likewise with balls
  double lhs = 0.0, rhs = 0.0, previous = 0.0;
  GridFunction layer(weight.grid);
  for (double level : levels) {
    for (std::size_t i = 0; i < weight.size(); ++i) layer.values[i] = weight.values[i].real() >= level ? 1.0 : 0.0;
    const Sides s = montgomery_sides(F, Fs, order, membership(F, layer));
    lhs += (level - previous) * s.lhs;
    rhs += (level - previous) * s.rhs;
    previous = level;
  }
  InequalityReport r = montgomery_report(f, {lhs, rhs}, weight.support_measure(), opt);
  r.name = "cor_weight";
  r.statement = "Montgomery-type bound for a weight, by layer cake";
  r.metadata["levels"] = static_cast<double>(levels.size());
  return r;
}

ConjectureExploration explore_conjecture1(const TrialFamily& family, const SigmaSpec& sigma_spec,
                                          std::size_t threads) {
  require(family.count > 0, ErrorKind::invalid_argument, "exploration needs at least one trial");
  const Grid lattice = frequency_lattice(family.grid());
  const auto order = distance_order(lattice);
  struct Trial {
    double ratio = 0.0, A = 0.0, A_star = 0.0, T = 0.0, num = 0.0, den = 0.0, discrepancy = 0.0;
  };
  std::vector<Trial> out(family.count);
  parallel_for(family.count, threads, [&](std::size_t i) {
    const GridFunction f = make_trial(family, i, 0);
    const GridFunction sigma = make_box_union(lattice, sigma_spec.reach, family.seed, i, 2);
    const Spectrum F = forward_transform(f);
    const Spectrum Fs = spectrum_of_rearrangement(f, kDefaultPad);
    const SetMembership set = membership(F, sigma);
    Trial t;
    t.A = set_mass(F, set.inside);
    t.A_star = ball_mass(Fs, set.measure, order);
    const double norm2 = f.norm_p(2.0);
    t.T = norm2 * norm2;
    // complements directly and as total minus set
    std::vector<char> outside(set.inside.size());
    for (std::size_t k = 0; k < outside.size(); ++k) outside[k] = !set.inside[k];
    t.den = set_mass(F, outside);
    t.num = t.T - t.A_star;
    const double direct_total = set_mass(F, std::vector<char>(outside.size(), 1));
    t.discrepancy = t.T > 0.0 ? std::abs(t.den - (direct_total - t.A)) / t.T : 0.0;
    t.discrepancy = std::max(t.discrepancy, t.T > 0.0 ? std::abs(direct_total - t.T) / t.T : 0.0);
    t.ratio = t.den > 0.0 ? t.num / t.den : std::numeric_limits<double>::infinity();
    out[i] = t;
  });

  ConjectureExploration ex;
  double best = -1.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& t = out[i];
    ex.ratios.push_back(t.ratio);
    if (!std::isfinite(t.ratio)) ++ex.degenerate;
    if (t.ratio > best) {
      best = t.ratio;
      ex.argmax = i;
    }
    ex.running_max.push_back(best);
    ex.complement_discrepancy = std::max(ex.complement_discrepancy, t.discrepancy);
  }
  const double kappa = std::max(best, 1.0);
  for (const auto& t : out) {
    const double rhs = (1.0 - 1.0 / kappa) * t.T + t.A_star / kappa;
    if (t.T > 0.0) ex.reformulation_gap = std::max(ex.reformulation_gap, (t.A - rhs) / t.T);
  }

  const auto& w = out[ex.argmax];
  InequalityReport r;
  r.name = "conjecture1_max_ratio";
  r.statement = "complement energy of the rearrangement against that of the function (conjectured bound)";
  r.kind = ReportKind::exploration;
  r.lhs = w.num;
  r.rhs = w.den;
  r.metadata["max_ratio"] = best;
  r.metadata["argmax"] = static_cast<double>(ex.argmax);
  r.metadata["trials"] = static_cast<double>(family.count);
  r.metadata["degenerate"] = static_cast<double>(ex.degenerate);
  r.metadata["complement_discrepancy"] = ex.complement_discrepancy;
  r.metadata["seed"] = static_cast<double>(family.seed);
  r.metadata["d"] = family.d;
  r.tags["generator"] = std::string(to_string(family.generator));
  r.finalize();
  ex.reports.push_back(r);

  InequalityReport q;
  q.name = "conjecture1_reformulated";
  q.statement = "equivalent form with kappa equal to the largest observed ratio";
  q.kind = ReportKind::exploration;
  q.lhs = w.A;
  q.rhs = (1.0 - 1.0 / kappa) * w.T + w.A_star / kappa;
  q.metadata["kappa"] = kappa;
  q.metadata["max_gap"] = ex.reformulation_gap;
  q.tags["generator"] = std::string(to_string(family.generator));
  q.finalize();
  ex.reports.push_back(q);
  return ex;
}

SchrodingerReports verify_schrodinger_bounds(const GridFunction& v0, double t, const GridFunction& sigma,
                                             double beta, const CheckOptions& opt) {
  const int d = static_cast<int>(v0.dim());
  require(t > 0.0, ErrorKind::domain, "evolution time must be positive");
  require(beta >= 0.5 * (d - 1), ErrorKind::invalid_argument, "beta must be at least (d-1)/2");
  require(sigma.grid.same_layout(v0.grid), ErrorKind::invalid_argument, "Sigma must share the grid of v0");
  for (auto v : sigma.values)
    require(v == Complex(0.0) || v == Complex(1.0), ErrorKind::invalid_argument, "Sigma must be {0,1}-valued");
  const double measure = sigma.support_measure();
  require(measure > 0.0, ErrorKind::invalid_argument, "Sigma must have positive measure");

  const GridFunction v = schrodinger_evolve(v0, t);
  CompensatedSum l2, l1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sigma.values[i] == Complex(0.0)) continue;
    l2.add(std::norm(v.values[i]));
    l1.add(std::abs(v.values[i]));
  }
  const double cell = v0.grid.cell_measure();
  const double mass_sigma = l2.value() * cell;
  const double l1_sigma = l1.value() * cell;
  const double kappa = kappa_bound(d);
  const double tol = budget(opt, tolerance::kSchrodinger, v0.grid.h);
  const std::vector<double> origin(d, 0.0);

  SchrodingerReports out;

  // small time: v is the inverse transform of e^{-i pi |xi|^2 t} v0^, whose
  // modulus is |v0^|; rearrange that on the frequency lattice
  const Spectrum V = forward_transform(v0, 1);
  const GridFunction w_star = symmetric_rearrange(V.as_grid_function());
  const Spectrum G = forward_transform(w_star, opt.pad);
  {
    InequalityReport& r = out.part1;
    r.name = "schrodinger_part1";
    r.statement = "local L^2 mass against the transform of the rearranged spectrum";
    r.lhs = mass_sigma;
    r.rhs = ball_mass(G, measure, distance_order(G.grid));
    r.constant_used = kappa;
    r.tolerance = tol;
    stamp(r, v0, opt);
    r.metadata["t"] = t;
    r.metadata["sigma_measure"] = measure;
    r.finalize();
  }

  // large time: the pseudo-conformal form gives the ball B(0, tau/t)
  const Spectrum Fs = spectrum_of_rearrangement(v0, opt.pad);
  {
    InequalityReport& r = out.part2;
    r.name = "schrodinger_part2";
    r.statement = "local L^2 mass against the rearranged datum on B(0, tau/t)";
    r.lhs = mass_sigma;
    r.rhs = ball_mass(Fs, measure / std::pow(t, d), distance_order(Fs.grid));
    r.constant_used = kappa;
    r.tolerance = tol;
    stamp(r, v0, opt);
    r.metadata["t"] = t;
    r.metadata["sigma_measure"] = measure;
    r.metadata["tau_over_t"] = set_rearrange(measure, d) / t;
    r.finalize();
  }

  for (auto [p, label] : {std::pair{1.0, "1"}, std::pair{4.0 / 3.0, "4/3"}, std::pair{2.0, "2"}}) {
    const double e = (2.0 - p) / p;
    const double np = v0.norm_p(p);
    InequalityReport r;
    r.name = std::string("schrodinger_holder_p=") + label;
    r.statement = "local L^2 mass from the L^p norm of the datum";
    r.kind = ReportKind::empirical;
    r.lhs = mass_sigma;
    r.rhs = std::pow(measure, e) * std::pow(t, -d * e) * np * np;
    stamp(r, v0, opt);
    r.metadata["p"] = p;
    r.metadata["t"] = t;
    r.finalize();
    out.extras.push_back(r);
  }

  const double sigma_root = std::pow(measure, 1.0 / d);
  {
    std::size_t nonzero = 0;
    for (auto z : V.values) nonzero += z != Complex(0.0);
    const double S_hat = static_cast<double>(nonzero) * V.cell_measure();
    InequalityReport r;
    r.name = "schrodinger_part1_l1";
    r.statement = "local L^1 norm, spectrum of finite support";
    r.kind = ReportKind::empirical;
    r.lhs = l1_sigma;
    r.rhs = std::sqrt(measure) * std::pow(1.0 + sigma_root, 0.5 * d) * (1.0 + S_hat) *
            bochner_riesz_functional(G, kernel(d, beta, 1.0), origin).real();
    stamp(r, v0, opt);
    r.metadata["t"] = t;
    r.metadata["spectral_support"] = S_hat;
    r.finalize();
    out.extras.push_back(r);
  }
  {
    const double S = v0.support_measure();
    InequalityReport r;
    r.name = "schrodinger_part2_l1";
    r.statement = "local L^1 norm, datum of finite support";
    r.kind = ReportKind::empirical;
    r.lhs = l1_sigma;
    r.rhs = std::sqrt(measure) * std::pow(1.0 + sigma_root / t, 0.5 * d) * std::pow(1.0 + S, 0.5 * d) *
            bochner_riesz_functional(Fs, kernel(d, beta, 1.0), origin).real();
    stamp(r, v0, opt);
    r.metadata["t"] = t;
    r.metadata["support_measure"] = S;
    r.finalize();
    out.extras.push_back(r);
  }
  return out;
}

StarReports verify_star_theorems(const GridFunction& f, const StarParams& p, const CheckOptions& opt) {
  const int d = static_cast<int>(f.dim());
  require(p.alpha > -0.5, ErrorKind::invalid_argument, "alpha must exceed -1/2");
  require(p.beta >= 0.0, ErrorKind::invalid_argument, "beta must be nonnegative");
  require(p.omega > 0.0, ErrorKind::invalid_argument, "Omega must be positive");
  const Spectrum F = forward_transform(f, opt.pad);
  const GridFunction line = star_rearrange_1d(f);
  const Spectrum L = forward_transform(line, opt.pad);
  StarReports out;
  {
    const std::vector<double> origin(d, 0.0);
    const double S = f.support_measure();
    const double psi = psi_factor(std::pow(p.omega, d) * S, d, p.alpha);
    InequalityReport& r = out.concentration;
    r.name = "star_concentration";
    r.statement = "Bochner-Riesz concentration against the one-dimensional rearrangement";
    r.kind = ReportKind::empirical;
    r.lhs = std::pow(p.omega, d) *
            std::abs(bochner_riesz_functional(F, kernel(d, p.alpha, p.omega, p.a), p.x.empty() ? origin : p.x));
    r.rhs = psi * p.omega * bochner_riesz_functional(L, kernel(1, p.beta, p.omega), std::vector<double>{0.0}).real();
    stamp(r, f, opt);
    r.metadata["psi"] = psi;
    r.metadata["support_measure"] = S;
    r.finalize();
  }
  {
    const SetMembership set = membership(F, p.sigma);
    const Sides s{set_mass(F, set.inside), ball_mass(L, set.measure, distance_order(L.grid))};
    out.montgomery = montgomery_report(f, s, set.measure, opt);
    out.montgomery.name = "star_montgomery";
    out.montgomery.statement = "Montgomery-type bound against the one-dimensional rearrangement";
    out.montgomery.metadata["window_half_width"] = 0.5 * set.measure;
  }
  return out;
}

std::vector<std::string> estimable_inequalities() {
  return {"hardy-littlewood", "weight", "dual-sobolev", "lieb", "lieb-half", "montgomery", "cor-weight", "conjecture1"};
}

ConstantEstimate estimate_constant(const TrialFamily& family, std::string_view name, std::size_t threads) {
  const auto names = estimable_inequalities();
  if (std::find(names.begin(), names.end(), name) == names.end())
    fail(ErrorKind::invalid_argument, "no harness for inequality '" + std::string(name) + "'");
  require(family.count > 0, ErrorKind::invalid_argument, "estimate needs at least one trial");

  ConstantEstimate est;
  est.name = std::string(name);
  est.seed = family.seed;
  est.trials = family.count;
  est.control = name == "hardy-littlewood";

  std::vector<double> ratios(family.count, 0.0);
  if (name == "conjecture1") {
    ratios = explore_conjecture1(family, {}, threads).ratios;
  } else {
    const Grid lattice = frequency_lattice(family.grid());
    const double reach = 0.25 / family.grid().h;
    parallel_for(family.count, threads, [&](std::size_t i) {
      const GridFunction f = make_trial(family, i, 0);
      InequalityReport r;
      if (name == "hardy-littlewood") {
        if (i == 0) {
          const GridFunction control = symmetric_rearrange(f);
          r = verify_hardy_littlewood(control, control);
        } else {
          r = verify_hardy_littlewood(f, make_trial(family, i, 1));
        }
      } else if (name == "weight") {
        r = verify_weight(make_trial(family, i, 1), f);
      } else if (name == "dual-sobolev") {
        r = verify_dual_sobolev(f, 1.0);
      } else if (name == "lieb") {
        r = verify_lieb(f, 1.0);
      } else if (name == "lieb-half") {
        r = verify_lieb(f, 0.5);
      } else if (name == "montgomery") {
        r = verify_montgomery(f, make_box_union(lattice, reach, family.seed, i, 2));
      } else {
        GridFunction w = make_box_union(lattice, reach, family.seed, i, 2);
        const GridFunction inner = make_box_union(lattice, 0.5 * reach, family.seed, i, 3);
        for (std::size_t k = 0; k < w.size(); ++k) w.values[k] += inner.values[k];
        r = verify_cor_weight(f, w);
      }
      ratios[i] = r.ratio;
    });
  }
  est.value = ratios[0];
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i] > est.value) {
      est.value = ratios[i];
      est.argmax = i;
    }
  }
  return est;
}

}  // namespace sdr
