#include "sdr/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sdr/error.hpp"
#include "sdr/specfun.hpp"

namespace sdr {
namespace {

std::vector<double> sorted_moduli(const GridFunction& f) {
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = std::abs(f.values[i]);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

std::size_t count_nonzero(const std::vector<double>& sorted_desc) {
  return static_cast<std::size_t>(
      std::find(sorted_desc.begin(), sorted_desc.end(), 0.0) - sorted_desc.begin());
}

}  // namespace

DistributionSamples distribution_function(const GridFunction& f, std::span<const double> lambdas) {
  require(!lambdas.empty(), ErrorKind::invalid_argument, "distribution_function needs at least one level");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] > 0.0, ErrorKind::invalid_argument, "distribution levels must be positive");
    if (i > 0) require(lambdas[i] > lambdas[i - 1], ErrorKind::invalid_argument,
                       "distribution levels must increase strictly");
  }
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = std::abs(f.values[i]);
  std::sort(m.begin(), m.end());
  const double cell = f.grid.cell_measure();
  DistributionSamples out;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  out.measures.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const auto above = static_cast<std::size_t>(m.end() - std::upper_bound(m.begin(), m.end(), lambda));
    out.measures.push_back(static_cast<double>(above) * cell);
  }
  return out;
}

double set_rearrange(double volume, int d) {
  require(volume >= 0.0, ErrorKind::invalid_argument, "volume must be nonnegative");
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  return std::pow(volume / unit_ball_volume(d), 1.0 / d);
}

GridFunction symmetric_rearrange(const GridFunction& f) {
  const auto m = sorted_moduli(f);
  const auto order = distance_order(f.grid);
  GridFunction out(f.grid);
  for (std::size_t k = 0; k < order.size(); ++k) out.values[order[k]] = m[k];
  return out;
}

RadialProfile rearrange_to_profile(const GridFunction& f) {
  const auto m = sorted_moduli(f);
  const std::size_t nz = count_nonzero(m);
  const int d = static_cast<int>(f.dim());
  const double cell = f.grid.cell_measure();
  RadialProfile p;
  p.dim = f.dim();
  p.radii.push_back(0.0);
  for (std::size_t k = 0; k < nz; ++k) {
    if (k + 1 < nz && m[k + 1] == m[k]) continue;
    p.radii.push_back(set_rearrange(static_cast<double>(k + 1) * cell, d));
    p.levels.push_back(m[k]);
  }
  return p;
}

RadialProfile rearrange_to_profile(const GridFunction& f, std::span<const double> radii) {
  require(radii.size() >= 2, ErrorKind::invalid_argument, "radius ladder needs at least two entries");
  require(radii.front() == 0.0, ErrorKind::invalid_argument, "radius ladder must start at 0");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i] > radii[i - 1], ErrorKind::invalid_argument, "radius ladder must increase strictly");
  const RadialProfile exact = rearrange_to_profile(f);
  const double support = exact.radii.back();
  if (radii.back() < support * (1.0 - 1e-12)) {
    fail(ErrorKind::range, "radius ladder ends at " + std::to_string(radii.back()) +
                               " but the rearranged support reaches " + std::to_string(support));
  }
  RadialProfile p;
  p.dim = f.dim();
  p.radii.assign(radii.begin(), radii.end());
  p.levels.resize(radii.size() - 1);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) p.levels[i] = exact.evaluate(radii[i + 1]);
  return p;
}

GridFunction star_rearrange_1d(const GridFunction& f) {
  if (f.dim() == 1) return symmetric_rearrange(f);
  const auto m = sorted_moduli(f);
  const Grid line = Grid::centered(1, f.size(), f.grid.cell_measure());
  const auto order = distance_order(line);
  GridFunction out(line);
  for (std::size_t k = 0; k < order.size(); ++k) out.values[order[k]] = m[k];
  return out;
}

InequalityReport check_decay_bound(const GridFunction& f, double p) {
  require(p >= 1.0, ErrorKind::invalid_argument, "decay bound needs p >= 1");
  const auto m = sorted_moduli(f);
  const std::size_t nz = count_nonzero(m);
  const int d = static_cast<int>(f.dim());
  const double cell = f.grid.cell_measure();

  InequalityReport r;
  r.name = "decay_bound";
  r.statement = "pointwise decay of the rearrangement from its L^p norm";
  r.kind = ReportKind::bound;
  r.constant_used = 1.0;
  r.tolerance = 0.0;
  r.metadata["p"] = p;
  r.metadata["d"] = d;
  r.metadata["h"] = f.grid.h;

  if (std::isinf(p)) {
    r.lhs = m.empty() ? 0.0 : m.front();
    r.rhs = f.norm_p(p);
    r.metadata["violations"] = r.lhs > r.rhs ? 1.0 : 0.0;
    r.finalize();
    return r;
  }

  // level^p * |B(0, rho_k)| against ||f||_p^p, with |B(0, rho_k)| = k h^d
  CompensatedSum total;
  for (std::size_t k = 0; k < nz; ++k) total.add(std::pow(m[k], p));
  const double norm_pp = total.value() * cell;

  double worst = -1.0, worst_lhs = 0.0;
  std::size_t worst_k = 0, violations = 0;
  double max_violation = 0.0;
  for (std::size_t k = 0; k < nz; ++k) {
    const double lhs = std::pow(m[k], p) * static_cast<double>(k + 1) * cell;
    if (lhs > norm_pp) {
      ++violations;
      max_violation = std::max(max_violation, lhs - norm_pp);
    }
    if (lhs > worst) {
      worst = lhs;
      worst_lhs = lhs;
      worst_k = k;
    }
  }
  r.lhs = nz == 0 ? 0.0 : worst_lhs;
  r.rhs = norm_pp;
  if (nz > 0) {
    const double t = set_rearrange(static_cast<double>(worst_k + 1) * cell, d);
    r.metadata["t_star"] = t;
    r.metadata["level_at_t_star"] = m[worst_k];
    r.metadata["bound_at_t_star"] =
        std::pow(norm_pp, 1.0 / p) / (std::pow(unit_ball_volume(d), 1.0 / p) * std::pow(t, d / p));
  }
  r.metadata["violations"] = static_cast<double>(violations);
  r.metadata["max_violation"] = max_violation;
  r.finalize();
  return r;
}

}  // namespace sdr
