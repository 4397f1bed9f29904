#include "sdr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <limits>
#include <sstream>

#include "sdr/error.hpp"
#include "sdr/quadrature.hpp"

namespace sdr {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroScanStep = kPi / 8.0;
constexpr double kZeroScanLimit = 1000.0;

void check_order(double order) {
  if (!(order >= -0.5) || !std::isfinite(order)) fail(ErrorKind::domain, "Bessel order must be >= -1/2");
}

// Above this argument the contour is pushed off the real segment (see
// hankel_j); below it the real Poisson integral has no harmful cancellation.
double direct_limit(double order) { return std::max(8.0, 1.2 * order); }

// Poisson integral  int_{-1}^{1} (1-s^2)^(order-1/2) cos(s x) ds  by
// Gauss-Gegenbauer rules of doubling size.
double poisson_integral(double order, double x) {
  const double m0 = gegenbauer_mass(order);
  std::size_t n = 16;
  const double need = 0.5 * x + 2.0 * std::cbrt(x) + 8.0;
  while (static_cast<double>(n) < need) n *= 2;

  auto apply = [&](std::size_t size) {
    const auto rule = gauss_gegenbauer(order, size);
    double sum = 0.0;
    for (std::size_t j = 0; j < size; ++j) sum += rule->weights[j] * std::cos(rule->nodes[j] * x);
    return sum;
  };

  double prev = apply(n);
  for (; n <= 1024; n *= 2) {
    const double next = apply(2 * n);
    if (std::abs(next - prev) <= 1e-13 * m0) return next;
    prev = next;
  }
  std::ostringstream msg;
  msg << "Poisson quadrature did not settle for order " << order << " at x = " << x;
  fail(ErrorKind::numeric, msg.str());
}

// The Poisson integral with its endpoints pushed along s = +-1 + i u gives
//   J(x) = Re[ sqrt(2/(pi x)) e^{i(x - order pi/2 - pi/4)} / Gamma(order+1/2)
//              * int_0^inf e^{-u} u^(order-1/2) (1 + i u/(2x))^(order-1/2) du ].
// No cancellation at large x, Gauss-Laguerre handles the u integral.
double hankel_j(double order, double x) {
  const double a = order - 0.5;
  auto apply = [&](std::size_t size) {
    const auto rule = gauss_laguerre(a, size);
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      const std::complex<double> z(1.0, rule->nodes[j] / (2.0 * x));
      sum += rule->weights[j] * std::pow(z, a);
    }
    return sum;
  };
  std::complex<double> prev = apply(32);
  for (std::size_t n = 32; n <= 128; n *= 2) {
    const std::complex<double> next = apply(2 * n);
    if (std::abs(next - prev) <= 1e-14 * std::abs(next)) {
      const double phase = std::fmod(x, 2.0 * kPi) - order * kPi / 2.0 - kPi / 4.0;
      const std::complex<double> rot(std::cos(phase), std::sin(phase));
      return std::sqrt(2.0 / (kPi * x)) * (rot * next).real() / std::tgamma(order + 0.5);
    }
    prev = next;
  }
  std::ostringstream msg;
  msg << "contour quadrature did not settle for order " << order << " at x = " << x;
  fail(ErrorKind::numeric, msg.str());
}

double poisson_prefactor(double order) {
  // 1 / (2^order Gamma(order + 1/2) sqrt(pi))
  return 1.0 / (std::pow(2.0, order) * std::tgamma(order + 0.5) * std::sqrt(kPi));
}

}  // namespace

void KernelSpec::validate() const {
  require(d >= 1, ErrorKind::invalid_argument, "kernel dimension must be >= 1");
  require(alpha > -0.5 && std::isfinite(alpha), ErrorKind::invalid_argument, "kernel alpha must exceed -1/2");
  require(omega > 0.0 && std::isfinite(omega), ErrorKind::invalid_argument, "kernel omega must be positive");
  require(center.empty() || center.size() == static_cast<std::size_t>(d), ErrorKind::invalid_argument,
          "kernel centre has the wrong dimension");
}

double unit_ball_volume(int d) {
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  const double half = 0.5 * d;
  return std::pow(kPi, half) / std::tgamma(half + 1.0);
}

double bessel_j(double order, double x) {
  check_order(order);
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::domain, "bessel_j needs a finite x > 0");
  if (order == -0.5) return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
  if (x >= direct_limit(order)) return hankel_j(order, x);
  return std::pow(x, order) * poisson_prefactor(order) * poisson_integral(order, x);
}

double script_j(double order, double x) {
  check_order(order);
  if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::domain, "script_j needs a finite x >= 0");
  if (order == -0.5) return std::cos(x);
  if (x >= direct_limit(order)) return hankel_j(order, x) / std::pow(x, order);
  return poisson_prefactor(order) * poisson_integral(order, x);
}

std::vector<double> bessel_zeros(double order, std::size_t count) {
  check_order(order);
  if (order == -0.5) {
    // cos x: zeros at (k - 1/2) pi
    std::vector<double> z(count);
    for (std::size_t k = 0; k < count; ++k) z[k] = (static_cast<double>(k) + 0.5) * kPi;
    if (count > 0 && z.back() > kZeroScanLimit)
      fail(ErrorKind::range, "requested zero lies beyond the scan range");
    return z;
  }
  std::vector<double> zeros;
  zeros.reserve(count);
  double x0 = 0.0;
  double f0 = script_j(order, 0.0);
  for (int i = 1; zeros.size() < count; ++i) {
    const double x1 = std::min(i * kZeroScanStep, kZeroScanLimit);
    const double f1 = script_j(order, x1);
    if (f1 == 0.0) {
      zeros.push_back(x1);
    } else if ((f0 > 0.0) != (f1 > 0.0) && f0 != 0.0) {
      double a = x0, b = x1, fa = f0;
      while (b - a > 2e-16 * b) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = script_j(order, m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    if (x1 >= kZeroScanLimit) break;
    x0 = x1;
    f0 = f1;
  }
  if (zeros.size() < count) {
    std::ostringstream msg;
    msg << "only " << zeros.size() << " zeros of order " << order << " below x = " << kZeroScanLimit
        << ", " << count << " requested";
    fail(ErrorKind::range, msg.str());
  }
  return zeros;
}

double bessel_zero(double order, int k) {
  if (!(order > -0.5)) fail(ErrorKind::domain, "bessel_zero needs order > -1/2");
  require(k >= 1, ErrorKind::invalid_argument, "zero index must be >= 1");
  return bessel_zeros(order, static_cast<std::size_t>(k)).back();
}

double m_alpha_hat(double xi_norm, const KernelSpec& spec) {
  require(spec.d >= 1, ErrorKind::invalid_argument, "kernel dimension must be >= 1");
  require(spec.alpha > -0.5, ErrorKind::invalid_argument, "kernel alpha must exceed -1/2");
  require(xi_norm >= 0.0, ErrorKind::domain, "frequency modulus must be nonnegative");
  const double nu = 0.5 * spec.d + spec.alpha;
  // Gamma(a+1) pi^{-a} J_nu(2 pi r) / r^nu  =  Gamma(a+1) 2^nu pi^{d/2} script_j(nu, 2 pi r)
  return std::tgamma(spec.alpha + 1.0) * std::pow(2.0, nu) * std::pow(kPi, 0.5 * spec.d) *
         script_j(nu, 2.0 * kPi * xi_norm);
}

double fourier_ball(double xi_norm, int d) {
  KernelSpec spec;
  spec.d = d;
  spec.alpha = 0.0;
  return m_alpha_hat(xi_norm, spec);
}

std::vector<double> wave_areas(double order, std::size_t count) {
  if (!(order > -0.5)) fail(ErrorKind::domain, "wave_areas needs order > -1/2");
  const auto zeros = bessel_zeros(order, count + 1);
  std::vector<double> areas(count);
  for (std::size_t k = 0; k < count; ++k) {
    areas[k] = integrate([&](double t) { return std::abs(bessel_j(order, t)); }, zeros[k], zeros[k + 1], 1e-14);
  }
  return areas;
}

Epsilon0 find_epsilon0_detailed(double order) {
  if (!(order > -0.5)) fail(ErrorKind::domain, "find_epsilon0 needs order > -1/2");
  Epsilon0 out;
  const double decay = order + 0.5;
  const double top = script_j(order, 0.0);

  // Extrema of script_j sit at the zeros of its derivative -t script_j_{order+1}(t).
  double tail_c = 0.0;
  auto probe = [&](double t) { tail_c = std::max(tail_c, std::abs(script_j(order, t)) * std::pow(1.0 + t, decay)); };

  std::vector<double> extrema;
  std::size_t want = 8;
  double level = 0.0, argmax = 0.0;
  double sampled_to = 0.0;
  bool certified = false;
  while (!certified) {
    try {
      extrema = bessel_zeros(order + 1.0, want);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::range) throw;
      break;
    }
    for (std::size_t k = out.extrema_checked; k < extrema.size(); ++k) {
      const double v = std::abs(script_j(order, extrema[k]));
      if (v > level) {
        level = v;
        argmax = extrema[k];
      }
      probe(extrema[k]);
    }
    out.extrema_checked = extrema.size();
    for (; sampled_to <= extrema.back(); sampled_to += kZeroScanStep / 2.0) probe(sampled_to);
    const double last = extrema.back();
    certified = level > 0.0 && tail_c * std::pow(1.0 + last, -decay) < level;
    out.certified_from = last;
    want *= 2;
  }
  out.tail_constant = tail_c;
  if (!certified) {
    std::ostringstream msg;
    msg << "find_epsilon0: tail not certified for order " << order << " (level " << level << ", C " << tail_c
        << ", extrema checked " << out.extrema_checked << ")";
    fail(ErrorKind::numeric, msg.str());
  }
  if (!(level < top)) {
    std::ostringstream msg;
    msg << "find_epsilon0: later extremum " << level << " does not sit below the value at 0 (" << top << ")";
    fail(ErrorKind::numeric, msg.str());
  }

  // script_j decreases from `top` through `level` before its first zero
  out.first_zero = bessel_zero(order, 1);
  double a = 0.0, b = out.first_zero;
  for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
    const double m = 0.5 * (a + b);
    if (script_j(order, m) > level)
      a = m;
    else
      b = m;
  }
  out.epsilon0 = 0.5 * (a + b);
  out.level = level;
  out.argmax = argmax;
  return out;
}

double find_epsilon0(double order) { return find_epsilon0_detailed(order).epsilon0; }

double theta_threshold(int d, double alpha) {
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  require(alpha > -0.5, ErrorKind::invalid_argument, "alpha must exceed -1/2");
  const double eps0 = find_epsilon0(0.5 * d + alpha);
  return eps0 * std::pow(unit_ball_volume(d), 1.0 / d) / (2.0 * kPi);
}

double upsilon_d(int d) {
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  const double p = d - 0.5;
  const double inner = integrate_endpoint([p](double t) { return std::pow(1.0 - t * t, p) * std::cos(kPi * t); },
                                          0.0, 1.0, 1e-15);
  const double c = 2.0 / (std::pow(2.0 * kPi, 0.5 * d) * std::sqrt(kPi));
  const double root = c * inner;
  return root * root;
}

double kappa_bound(int d) {
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  const double p = d - 0.5;
  const double inner = integrate_endpoint([p](double t) { return std::pow(1.0 - t * t, p) * std::cos(kPi * t); },
                                          0.0, 1.0, 1e-15);
  if (!(inner > 0.0)) {
    std::ostringstream msg;
    msg << "kappa_bound: the cosine moment is " << inner << " for d = " << d << "; the lower bound is void";
    fail(ErrorKind::numeric, msg.str());
  }
  const double cd = unit_ball_volume(d);
  return std::pow(2.0, d + 1) / (upsilon_d(d) * std::min(1.0, cd * cd));
}

}  // namespace sdr
