#include "sdr/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "sdr/error.hpp"
#include "sdr/quadrature.hpp"

namespace sdr {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxTransformCells = std::size_t{1} << 27;

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : size(n), data(fftw_alloc_complex(n)) {
    if (!data) fail(ErrorKind::resource, "FFT buffer allocation failed");
    std::fill_n(reinterpret_cast<double*>(data), 2 * n, 0.0);
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  Complex get(std::size_t i) const { return {data[i][0], data[i][1]}; }
  void set(std::size_t i, Complex z) {
    data[i][0] = z.real();
    data[i][1] = z.imag();
  }

  std::size_t size;
  fftw_complex* data;
};

void run_fft(FftwBuffer& buf, std::size_t dim, std::size_t n, int sign) {
  std::vector<int> dims(dim, static_cast<int>(n));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dim), dims.data(), buf.data, buf.data, sign, FFTW_ESTIMATE);
  }
  if (!plan) fail(ErrorKind::resource, "FFTW could not build a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t checked_power(std::size_t n, std::size_t d) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total > kMaxTransformCells / n) {
      std::ostringstream msg;
      msg << "transform of " << n << "^" << d << " cells exceeds the supported size";
      fail(ErrorKind::resource, msg.str());
    }
    total *= n;
  }
  return total;
}

// e^{-2 pi i (o + h/2) xi_m} for m = -N/2 .. N/2-1 (index m + N/2)
std::vector<Complex> axis_phase(double origin, double h, std::size_t n_fft) {
  const double c = (origin + 0.5 * h) / (static_cast<double>(n_fft) * h);
  std::vector<Complex> ph(n_fft);
  const auto half = static_cast<long long>(n_fft / 2);
  for (std::size_t p = 0; p < n_fft; ++p) {
    const long long m = static_cast<long long>(p) - half;
    const double frac = std::fmod(c * static_cast<double>(m), 1.0);
    ph[p] = std::polar(1.0, -2.0 * kPi * frac);
  }
  return ph;
}

// FFT slot of the centred position p (frequency m = p - N/2)
std::size_t fft_slot(std::size_t p, std::size_t n_fft) { return (p + n_fft / 2) % n_fft; }

template <class F>
void for_each_index(std::size_t dim, std::size_t n, F&& body) {
  std::vector<std::size_t> idx(dim, 0);
  const std::size_t total = checked_power(n, dim);
  for (std::size_t flat = 0; flat < total; ++flat) {
    body(flat, idx);
    for (std::size_t k = dim; k-- > 0;) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

Spectrum forward_transform(const GridFunction& f, std::size_t pad) {
  require(pad >= 1, ErrorKind::invalid_argument, "padding factor must be >= 1");
  const Grid& g = f.grid;
  g.validate();
  const std::size_t d = g.dim();
  const std::size_t longest = *std::max_element(g.shape.begin(), g.shape.end());
  if (next_pow2(longest) > kMaxTransformCells / pad) fail(ErrorKind::resource, "transform length overflows");
  const std::size_t n_fft = next_pow2(longest) * pad;
  const std::size_t total = checked_power(n_fft, d);

  FftwBuffer buf(total);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto j = g.unravel(i);
    std::size_t dest = 0;
    for (std::size_t k = 0; k < d; ++k) dest = dest * n_fft + j[k];
    buf.set(dest, f.values[i]);
  }
  run_fft(buf, d, n_fft, FFTW_FORWARD);

  std::vector<std::vector<Complex>> phase(d);
  for (std::size_t k = 0; k < d; ++k) phase[k] = axis_phase(g.origin[k], g.h, n_fft);
  const double dxi = 1.0 / (static_cast<double>(n_fft) * g.h);
  const double scale = g.cell_measure();

  Spectrum s;
  s.source = g;
  s.grid.shape.assign(d, n_fft);
  s.grid.h = dxi;
  s.grid.origin.assign(d, -(static_cast<double>(n_fft / 2) + 0.5) * dxi);
  s.values.resize(total);
  for_each_index(d, n_fft, [&](std::size_t flat, const std::vector<std::size_t>& p) {
    std::size_t slot = 0;
    Complex ph = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      slot = slot * n_fft + fft_slot(p[k], n_fft);
      ph *= phase[k][p[k]];
    }
    s.values[flat] = buf.get(slot) * ph * scale;
  });
  return s;
}

GridFunction inverse_transform(const Spectrum& F) {
  const Grid& src = F.source;
  src.validate();
  F.grid.validate();
  const std::size_t d = F.grid.dim();
  require(src.dim() == d, ErrorKind::invalid_argument, "spectrum layouts disagree in dimension");
  const std::size_t n_fft = F.grid.shape[0];
  for (auto s : F.grid.shape)
    require(s == n_fft, ErrorKind::invalid_argument, "spectrum lattice must be square");
  for (auto s : src.shape) require(s <= n_fft, ErrorKind::invalid_argument, "spectrum is smaller than its source");
  const std::size_t total = checked_power(n_fft, d);
  require(F.values.size() == total, ErrorKind::invalid_argument, "spectrum value count does not match its lattice");

  std::vector<std::vector<Complex>> phase(d);
  for (std::size_t k = 0; k < d; ++k) phase[k] = axis_phase(src.origin[k], src.h, n_fft);

  FftwBuffer buf(total);
  for_each_index(d, n_fft, [&](std::size_t flat, const std::vector<std::size_t>& p) {
    std::size_t slot = 0;
    Complex ph = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      slot = slot * n_fft + fft_slot(p[k], n_fft);
      ph *= phase[k][p[k]];
    }
    buf.set(slot, F.values[flat] * std::conj(ph));
  });
  run_fft(buf, d, n_fft, FFTW_BACKWARD);

  const double scale = F.grid.cell_measure();
  GridFunction out(src);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto j = src.unravel(i);
    std::size_t slot = 0;
    for (std::size_t k = 0; k < d; ++k) slot = slot * n_fft + j[k];
    out.values[i] = buf.get(slot) * scale;
  }
  return out;
}

double spectral_leakage(const Spectrum& F) {
  const double cutoff = 0.4 / F.source.h;
  CompensatedSum total, outside;
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    const double e = std::norm(F.values[i]);
    total.add(e);
    const auto xi = F.grid.center_of(i);
    bool out = false;
    for (double c : xi) out = out || std::abs(c) >= cutoff;
    if (out) outside.add(e);
  }
  return total.value() > 0.0 ? outside.value() / total.value() : 0.0;
}

RadialSpectrum radial_fourier(const RadialProfile& p, std::span<const double> rho) {
  p.validate();
  const int d = static_cast<int>(p.dim);
  RadialSpectrum out;
  out.dim = p.dim;
  out.rho.assign(rho.begin(), rho.end());
  out.values.resize(rho.size());
  // level = sum_i (levels[i] - levels[i+1]) * 1_{B(0, radii[i+1])}
  for (std::size_t q = 0; q < rho.size(); ++q) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.levels.size(); ++i) {
      const double drop = p.levels[i] - (i + 1 < p.levels.size() ? p.levels[i + 1] : 0.0);
      if (drop == 0.0) continue;
      const double r = p.radii[i + 1];
      acc.add(drop * std::pow(r, d) * fourier_ball(r * rho[q], d));
    }
    out.values[q] = acc.value();
  }
  return out;
}

RadialSpectrum radial_fourier(const std::function<double(double)>& level, double support, int d,
                              std::span<const double> rho) {
  require(support > 0.0, ErrorKind::invalid_argument, "support radius must be positive");
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  RadialSpectrum out;
  out.dim = static_cast<std::size_t>(d);
  out.rho.assign(rho.begin(), rho.end());
  out.values.resize(rho.size());
  const double nu = 0.5 * d - 1.0;
  const double front = std::pow(2.0 * kPi, 0.5 * d);
  for (std::size_t q = 0; q < rho.size(); ++q) {
    const double w = 2.0 * kPi * rho[q];
    // J_nu(z) / z^nu; for d = 1 that is sqrt(2/pi) cos z
    auto kernel = [&](double z) {
      return d == 1 ? std::sqrt(2.0 / kPi) * std::cos(z) : script_j(nu, z);
    };
    auto integrand = [&](double r) { return level(r) * std::pow(r, d - 1) * kernel(w * r); };
    // split at the kernel's half-periods so each piece is smooth and short
    const std::size_t pieces = 1 + static_cast<std::size_t>(w * support / kPi);
    double sum = 0.0;
    for (std::size_t k = 0; k < pieces; ++k) {
      const double a = support * static_cast<double>(k) / static_cast<double>(pieces);
      const double b = support * static_cast<double>(k + 1) / static_cast<double>(pieces);
      sum += integrate_endpoint(integrand, a, b, 1e-13);
    }
    out.values[q] = front * sum;
  }
  return out;
}

Complex bochner_riesz_functional(const Spectrum& F, const KernelSpec& spec, std::span<const double> x) {
  spec.validate();
  const std::size_t d = F.dim();
  require(static_cast<std::size_t>(spec.d) == d, ErrorKind::invalid_argument, "kernel and spectrum dimensions differ");
  require(x.size() == d, ErrorKind::invalid_argument, "evaluation point has the wrong dimension");
  std::vector<double> a(d, 0.0);
  if (!spec.center.empty()) a = spec.center;

  const double dxi = F.grid.h;
  const double reach = (static_cast<double>(F.grid.shape[0] / 2) - 1.0) * dxi;
  for (std::size_t k = 0; k < d; ++k) {
    if (std::abs(a[k]) + spec.omega > reach) {
      std::ostringstream msg;
      msg << "kernel support |a| + Omega = " << std::abs(a[k]) + spec.omega << " reaches the frequency window edge "
          << reach;
      fail(ErrorKind::range, msg.str());
    }
  }

  CompensatedSum re, im;
  const double inv_omega2 = 1.0 / (spec.omega * spec.omega);
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    if (F.values[i] == Complex{}) continue;
    const auto xi = F.grid.center_of(i);
    double dist2 = 0.0, dot = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double u = xi[k] - a[k];
      dist2 += u * u;
      dot += x[k] * xi[k];
    }
    const double s = 1.0 - dist2 * inv_omega2;
    if (!(s > 0.0)) continue;
    const double m = spec.alpha == 0.0 ? 1.0 : std::pow(s, spec.alpha);
    const Complex term = F.values[i] * m * std::polar(1.0, 2.0 * kPi * std::fmod(dot, 1.0));
    re.add(term.real());
    im.add(term.imag());
  }
  const double scale = F.grid.cell_measure() / std::pow(spec.omega, static_cast<double>(d));
  return Complex(re.value(), im.value()) * scale;
}

GridFunction schrodinger_evolve(const GridFunction& v0, double t) {
  require(t > 0.0 && std::isfinite(t), ErrorKind::domain, "evolution time must be positive");
  Spectrum s = forward_transform(v0, 1);
  const double leak = spectral_leakage(s);
  if (leak > 1e-6) {
    std::ostringstream msg;
    msg << "initial datum is under-resolved: spectral leakage " << leak << " exceeds 1e-6";
    fail(ErrorKind::precondition, msg.str());
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double r2 = s.grid.center_norm2(i);
    // e^{-i pi |xi|^2 t}, reduced mod 2 before scaling by pi
    s.values[i] *= std::polar(1.0, -kPi * std::fmod(r2 * t, 2.0));
  }
  return inverse_transform(s);
}

InequalityReport dispersive_check(const GridFunction& v0, double t, double q, double tolerance) {
  require(q >= 2.0, ErrorKind::invalid_argument, "dispersive estimate needs q >= 2");
  const double d = static_cast<double>(v0.dim());
  const GridFunction v = schrodinger_evolve(v0, t);
  const double q_dual = std::isinf(q) ? 1.0 : q / (q - 1.0);
  const double decay = std::isinf(q) ? 0.5 * d : 0.5 * d * (1.0 - 2.0 / q);

  InequalityReport r;
  r.name = "dispersive";
  r.statement = "free Schroedinger dispersive estimate L^{q'} -> L^q";
  r.kind = ReportKind::bound;
  r.lhs = v.norm_p(q);
  r.rhs = std::pow(t, -decay) * v0.norm_p(q_dual);
  r.constant_used = 1.0;
  r.tolerance = tolerance;
  r.metadata["t"] = t;
  r.metadata["q"] = q;
  r.metadata["d"] = d;
  r.metadata["h"] = v0.grid.h;
  r.finalize();
  return r;
}

}  // namespace sdr
