#include "sdr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "sdr/error.hpp"
#include "sdr/quadrature.hpp"
#include "sdr/rearrange.hpp"

namespace sdr {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> moduli(const GridFunction& f) {
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = std::abs(f.values[i]);
  return m;
}

bool has_non_real_or_negative(const GridFunction& f) {
  return std::any_of(f.values.begin(), f.values.end(),
                     [](Complex z) { return z.imag() != 0.0 || z.real() < 0.0; });
}

// Antiderivative of the overlap triangle (h - |v|)_+.
double tri_cdf(double v, double h) {
  if (v <= -h) return 0.0;
  if (v <= 0.0) return 0.5 * (v + h) * (v + h);
  if (v <= h) return h * h - 0.5 * (h - v) * (h - v);
  return h * h;
}

// Exact triple integral for moduli on a common 1-D layout: the pair
// (cell j of f, cell k of g) contributes f_j g_k int c(u) (h - |u - (j-k)h|)_+ du.
double riesz_sum(const std::vector<double>& f, const std::vector<double>& g, const std::vector<double>& c,
                 double h, double origin) {
  const auto n = static_cast<long long>(f.size());
  CompensatedSum total;
  for (long long D = -(n - 1); D <= n - 1; ++D) {
    CompensatedSum pair;
    for (long long j = std::max(0LL, D); j < std::min(n, n + D); ++j) pair.add(f[j] * g[j - D]);
    if (pair.value() == 0.0) continue;
    const double delta = static_cast<double>(D) * h;
    const auto first = static_cast<long long>(std::floor((delta - h - origin) / h)) - 1;
    CompensatedSum weight;
    for (long long m = std::max(0LL, first); m < std::min(n, first + 4); ++m) {
      const double a = origin + static_cast<double>(m) * h;
      weight.add(c[m] * (tri_cdf(a + h - delta, h) - tri_cdf(a - delta, h)));
    }
    total.add(pair.value() * weight.value());
  }
  return total.value();
}

// The continuum rearrangement of a 1-D step function with cells of length h:
// the k-th largest value sits on h k/2 <= |x| < h (k+1)/2, i.e. on two
// half-cells of a centred grid of spacing h/2.
std::vector<double> half_cell_rearrangement(std::vector<double> m) {
  std::sort(m.begin(), m.end(), std::greater<>());
  const std::size_t n = m.size();
  std::vector<double> out(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    out[n - 1 - k] = m[k];
    out[n + k] = m[k];
  }
  return out;
}

constexpr double kPanel = 1.0 / 64.0;
constexpr double kGibbsReach = 1000.0;

double sinc_2pi(double t) {
  if (t == 0.0) return 2.0;
  return std::sin(2.0 * kPi * (t - std::round(t))) / (kPi * t);
}

const std::vector<double>& gibbs_panels() {
  static const std::vector<double> cum = [] {
    const auto count = static_cast<std::size_t>(kGibbsReach / kPanel);
    std::vector<double> c(count + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < count; ++k) {
      acc.add(gauss_legendre_30(sinc_2pi, static_cast<double>(k) * kPanel, static_cast<double>(k + 1) * kPanel));
      c[k + 1] = acc.value();
    }
    return c;
  }();
  return cum;
}

}  // namespace

InequalityReport verify_hardy_littlewood(const GridFunction& f, const GridFunction& g) {
  require(f.grid.same_layout(g.grid), ErrorKind::invalid_argument, "Hardy-Littlewood check needs a common grid");
  const GridFunction fs = symmetric_rearrange(f);
  const GridFunction gs = symmetric_rearrange(g);
  CompensatedSum lhs, rhs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    lhs.add(std::abs(f.values[i]) * std::abs(g.values[i]));
    rhs.add(fs.values[i].real() * gs.values[i].real());
  }
  const double cell = f.grid.cell_measure();
  InequalityReport r;
  r.name = "hardy_littlewood";
  r.statement = "Hardy-Littlewood rearrangement inequality";
  r.lhs = lhs.value() * cell;
  r.rhs = rhs.value() * cell;
  r.tolerance = tolerance::kExact;
  r.metadata["d"] = static_cast<double>(f.dim());
  r.metadata["h"] = f.grid.h;
  r.metadata["moduli_taken"] = has_non_real_or_negative(f) || has_non_real_or_negative(g) ? 1.0 : 0.0;
  r.finalize();
  return r;
}

double riesz_functional(const GridFunction& f, const GridFunction& g, const GridFunction& c) {
  require(f.dim() == 1, ErrorKind::invalid_argument, "the Riesz functional is implemented in one dimension");
  require(f.grid.same_layout(g.grid) && f.grid.same_layout(c.grid), ErrorKind::invalid_argument,
          "Riesz check needs a common grid");
  return riesz_sum(moduli(f), moduli(g), moduli(c), f.grid.h, f.grid.origin[0]);
}

InequalityReport verify_riesz(const GridFunction& f, const GridFunction& g, const GridFunction& c) {
  const double lhs = riesz_functional(f, g, c);
  const double h = f.grid.h;
  const std::size_t n = f.size();
  const double half = 0.5 * h;
  const double fine_origin = -static_cast<double>(n) * half;
  // on the half-cell grid the overlap kernel has width h/2, so cells of
  // length h are pairs of fine cells
  const double rhs = riesz_sum(half_cell_rearrangement(moduli(f)), half_cell_rearrangement(moduli(g)),
                               half_cell_rearrangement(moduli(c)), half, fine_origin);
  InequalityReport r;
  r.name = "riesz";
  r.statement = "Riesz rearrangement inequality";
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance::kExact;
  r.metadata["d"] = 1.0;
  r.metadata["h"] = h;
  r.metadata["cells"] = static_cast<double>(n);
  r.metadata["moduli_taken"] =
      has_non_real_or_negative(f) || has_non_real_or_negative(g) || has_non_real_or_negative(c) ? 1.0 : 0.0;
  r.finalize();
  return r;
}

double psi_factor(double s, int d, double alpha) {
  require(s >= 0.0, ErrorKind::invalid_argument, "psi needs s >= 0");
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  const double critical = 0.5 * (d - 1);
  if (std::abs(alpha - critical) <= 1e-12) return std::log1p(s);
  if (alpha < critical) return std::pow(1.0 + s, 0.5 * (d - 2.0 * alpha - 1.0));
  return 1.0;
}

double gibbs_integral(double s) {
  require(s >= 0.0 && std::isfinite(s), ErrorKind::invalid_argument, "Gibbs integral needs finite s >= 0");
  const auto& cum = gibbs_panels();
  const auto k = static_cast<std::size_t>(std::floor(s / kPanel));
  if (k < cum.size()) {
    const double a = static_cast<double>(k) * kPanel;
    return a == s ? cum[k] : cum[k] + gauss_legendre_30(sinc_2pi, a, s);
  }
  CompensatedSum acc;
  acc.add(cum.back());
  double a = kGibbsReach;
  while (a < s) {
    const double b = std::min(s, a + kPanel);
    acc.add(gauss_legendre_30(sinc_2pi, a, b));
    a = b;
  }
  return acc.value();
}

std::vector<InequalityReport> gibbs_check() {
  std::vector<InequalityReport> out;

  InequalityReport small;
  small.name = "gibbs_small";
  small.statement = "sine-integral lower bound s on [0, 1/2]";
  double worst_gap = std::numeric_limits<double>::infinity();
  double worst_ratio = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double s = 0.5 * i / 99.0;
    const double g = gibbs_integral(s);
    worst_gap = std::min(worst_gap, g - s);
    // s = 0 is an equality; the ratio is tracked over s > 0
    const double ratio = g > 0.0 ? s / g : (s > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      small.lhs = s;
      small.rhs = g;
      small.metadata["argmax_ratio"] = s;
    }
  }
  small.metadata["points"] = 100;
  small.metadata["min_gap"] = worst_gap;
  small.finalize();
  out.push_back(small);

  InequalityReport large;
  large.name = "gibbs_large";
  large.statement = "sine-integral lower bound 2/5 on [1/2, 1000]";
  const auto& cum = gibbs_panels();
  const auto first = static_cast<std::size_t>(0.5 / kPanel);
  std::size_t argmin = first;
  for (std::size_t k = first; k < cum.size(); ++k)
    if (cum[k] < cum[argmin]) argmin = k;
  large.lhs = 0.4;
  large.rhs = cum[argmin];
  large.metadata["argmin"] = static_cast<double>(argmin) * kPanel;
  large.metadata["points"] = static_cast<double>(cum.size() - first);
  large.finalize();
  out.push_back(large);

  InequalityReport limit;
  limit.name = "gibbs_limit";
  limit.statement = "sine-integral limit 1/2";
  const double g = gibbs_integral(kGibbsReach);
  limit.lhs = std::abs(g - 0.5);
  limit.rhs = 1e-3;
  limit.metadata["s"] = kGibbsReach;
  limit.metadata["value"] = g;
  limit.finalize();
  out.push_back(limit);
  return out;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex m;
  std::size_t next = 0;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next >= count) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        // keep the failure of the lowest index so the outcome is reproducible
        std::lock_guard lock(m);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sdr
