#pragma once

#include <cstddef>
#include <vector>

namespace sdr {

/// Bochner-Riesz kernel parameters: m_alpha((x - center) / omega) on R^d.
struct KernelSpec {
  int d = 1;
  double alpha = 0.0;
  double omega = 1.0;
  std::vector<double> center;  // empty means the origin

  void validate() const;
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// J_lambda(x) for x > 0 and lambda >= -1/2.
double bessel_j(double order, double x);

/// J_lambda(x) / x^lambda, continuous at x = 0; cos(x) exactly for lambda = -1/2.
double script_j(double order, double x);

/// The k-th positive zero (k >= 1) of J_lambda, lambda > -1/2.
double bessel_zero(double order, int k);

/// The first `count` positive zeros, from a single scan.
std::vector<double> bessel_zeros(double order, std::size_t count);

/// Fourier transform of the unit-ball indicator at |xi| = xi_norm.
double fourier_ball(double xi_norm, int d);

/// Fourier transform of (1 - |x|^2)_+^alpha at |xi| = xi_norm (dilation and
/// centre in `spec` are the caller's business).
double m_alpha_hat(double xi_norm, const KernelSpec& spec);

/// Areas of |J_nu| over [j_k, j_{k+1}] for k = 1..count.
std::vector<double> wave_areas(double order, std::size_t count);

struct Epsilon0 {
  double epsilon0 = 0.0;
  double level = 0.0;            // largest |script_j| on [epsilon0, inf)
  double argmax = 0.0;           // where that level is attained
  double first_zero = 0.0;       // j_{lambda,1}
  double tail_constant = 0.0;    // measured sup |script_j(t)| (1+t)^(lambda+1/2)
  double certified_from = 0.0;   // beyond this the decay bound is below `level`
  std::size_t extrema_checked = 0;
};

/// The plateau radius of script_j: below it script_j exceeds every later
/// value in modulus.
Epsilon0 find_epsilon0_detailed(double order);
double find_epsilon0(double order);

/// epsilon0(d/2 + alpha) * |B(0,1)|^(1/d) / (2 pi).
double theta_threshold(int d, double alpha);

double upsilon_d(int d);

/// 2^(d+1) / (upsilon_d * min(1, |B(0,1)|^2)).
double kappa_bound(int d);

}  // namespace sdr
