#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sdr/grid.hpp"
#include "sdr/report.hpp"
#include "sdr/specfun.hpp"

namespace sdr {

/// Zero-padding factor applied by default before forward transforms.
inline constexpr std::size_t kDefaultPad = 2;

/// Samples of the continuum Fourier integral (kernel e^{-2 pi i <t, xi>}) of
/// the grid samples. Every axis is padded with zeros to the same length
/// N = pad * (next power of two >= the longest axis); the frequency spacing
/// is 1 / (N h).
Spectrum forward_transform(const GridFunction& f, std::size_t pad = kDefaultPad);

/// Inverse of forward_transform, cropped back to the source layout.
GridFunction inverse_transform(const Spectrum& F);

/// Fraction of spectral energy at frequencies with some |xi_k| >= 0.4 / h.
double spectral_leakage(const Spectrum& F);

/// Values of a radial Fourier transform at a list of radii |xi|.
struct RadialSpectrum {
  std::size_t dim = 1;
  std::vector<double> rho;
  std::vector<double> values;
};

/// Exact transform of a radial step function: a sum of dilated ball
/// transforms weighted by the level drops.
RadialSpectrum radial_fourier(const RadialProfile& p, std::span<const double> rho);

/// Transform of a general radial function supported in the ball of radius
/// `support`, by adaptive quadrature of the Hankel integral.
RadialSpectrum radial_fourier(const std::function<double(double)>& level, double support, int d,
                              std::span<const double> rho);

/// Omega^{-d} * sum over frequency cells of F(xi) m_alpha((xi - a)/Omega) e^{2 pi i <x, xi>} dxi.
Complex bochner_riesz_functional(const Spectrum& F, const KernelSpec& spec, std::span<const double> x);

/// Free Schroedinger evolution: multiplies the (unpadded) spectrum by
/// e^{-i pi |xi|^2 t} and inverts.
GridFunction schrodinger_evolve(const GridFunction& v0, double t);

/// ||v(t)||_q <= t^{-(d/2)(1-2/q)} ||v0||_{q'} with constant 1 on moduli.
InequalityReport dispersive_check(const GridFunction& v0, double t, double q, double tolerance = 1e-9);

}  // namespace sdr
