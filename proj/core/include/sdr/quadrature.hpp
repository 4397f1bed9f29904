#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace sdr {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule for the weight (1 - s^2)^(mu - 1/2) on [-1, 1], mu > -1/2.
/// Rules are cached; the returned pointer stays valid for the program lifetime.
std::shared_ptr<const QuadratureRule> gauss_gegenbauer(double mu, std::size_t n);

/// n-point Gauss rule for the weight u^a e^{-u} on [0, inf), a > -1.
std::shared_ptr<const QuadratureRule> gauss_laguerre(double a, std::size_t n);

/// Total mass of the Gegenbauer weight: sqrt(pi) Gamma(mu + 1/2) / Gamma(mu + 1).
double gegenbauer_mass(double mu);

/// Adaptive Gauss-Kronrod (15 points) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, double* error = nullptr);

/// Double-exponential rule; copes with integrable endpoint singularities.
double integrate_endpoint(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, double* error = nullptr);

/// Fixed 30-point Gauss-Legendre on [a, b].
double gauss_legendre_30(const std::function<double(double)>& f, double a, double b);

}  // namespace sdr
