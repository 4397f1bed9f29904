#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "oracles.hpp"
#include "sdr/error.hpp"
#include "sdr/specfun.hpp"

using namespace sdr;
using std::numbers::pi;

namespace {

double quad(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

TEST(Bessel, MatchesSeriesOracle) {
  for (double nu : {-0.5, 0.0, 0.3, 1.0, 2.5, 4.0}) {
    for (double x : {1e-6, 0.01, 0.7, 3.0, 9.99, 17.3, 33.0, 49.5}) {
      const double ref = oracle::bessel_series(nu, x);
      EXPECT_LE(std::abs(bessel_j(nu, x) - ref), 1e-11 * std::abs(ref)) << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(Bessel, LargeArgumentAgainstBoost) {
  for (double nu : {0.0, 0.5, 3.0, 7.5}) {
    for (double x = 60.0; x < 2000.0; x *= 1.37) {
      const double ref = boost::math::cyl_bessel_j(nu, x);
      const double envelope = std::sqrt(2.0 / (pi * x));
      EXPECT_NEAR(bessel_j(nu, x), ref, 1e-11 * envelope) << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(Bessel, HalfOrderClosedForms) {
  for (double x : {0.2, 1.0, 5.0, 40.0}) {
    EXPECT_NEAR(bessel_j(-0.5, x), std::sqrt(2.0 / (pi * x)) * std::cos(x), 1e-15);
    EXPECT_NEAR(bessel_j(0.5, x), std::sqrt(2.0 / (pi * x)) * std::sin(x), 1e-15);
  }
}

TEST(Bessel, RejectsOutOfRange) {
  EXPECT_THROW(bessel_j(-0.75, 1.0), Error);
  EXPECT_THROW(bessel_j(1.0, -1.0), Error);
}

TEST(ScriptJ, ValueAtOriginAndCosine) {
  for (double nu : {0.0, 0.5, 1.0, 2.5}) EXPECT_NEAR(script_j(nu, 0.0), 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1)), 1e-15);
  for (double x : {0.0, 0.3, 2.0, 30.0}) EXPECT_EQ(script_j(-0.5, x), std::cos(x));
  EXPECT_NEAR(script_j(1.5, 4.0), bessel_j(1.5, 4.0) / std::pow(4.0, 1.5), 1e-16);
}

TEST(BesselZero, AgainstBisectionOracle) {
  const double ref = oracle::bessel_series_zero(0.0, 2.3, 2.5);
  EXPECT_NEAR(bessel_zero(0.0, 1), ref, 1e-12);
  EXPECT_NEAR(bessel_zero(0.0, 1), 2.404825557695773, 1e-13);
  for (int k = 1; k <= 5; ++k) EXPECT_NEAR(bessel_zero(0.5, k), k * pi, 1e-12 * k);
  const auto zs = bessel_zeros(1.0, 6);
  ASSERT_EQ(zs.size(), 6u);
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(zs[k], bessel_zero(1.0, k + 1), 1e-12);
    EXPECT_NEAR(boost::math::cyl_bessel_j(1.0, zs[k]), 0.0, 1e-14);
  }
  EXPECT_THROW(bessel_zero(0.0, 0), Error);
}

TEST(FourierBall, OneAndThreeDimensions) {
  for (double r : {0.05, 0.3, 1.1, 4.7}) {
    const double z = 2 * pi * r;
    EXPECT_NEAR(fourier_ball(r, 1), std::sin(z) / (pi * r), 1e-13);
    EXPECT_NEAR(fourier_ball(r, 3), (std::sin(z) - z * std::cos(z)) / (2 * pi * pi * r * r * r), 1e-13);
  }
  for (int d = 1; d <= 5; ++d) {
    EXPECT_NEAR(fourier_ball(0.0, d), unit_ball_volume(d), 1e-12);
    EXPECT_NEAR(unit_ball_volume(d), std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1), 1e-14);
  }
}

TEST(MAlphaHat, OneDimensionalQuadrature) {
  for (double alpha : {0.0, 1.0, 2.5}) {
    KernelSpec spec;
    spec.d = 1;
    spec.alpha = alpha;
    for (double xi : {0.0, 0.4, 1.3, 3.0}) {
      const double ref = quad([&](double x) { return std::pow(1 - x * x, alpha) * std::cos(2 * pi * xi * x); }, -1, 1);
      EXPECT_NEAR(m_alpha_hat(xi, spec), ref, 1e-12) << "alpha=" << alpha << " xi=" << xi;
    }
  }
  KernelSpec ball;
  ball.d = 2;
  EXPECT_NEAR(m_alpha_hat(0.7, ball), fourier_ball(0.7, 2), 1e-14);
}

TEST(KernelSpec, Validation) {
  KernelSpec s;
  s.alpha = -1.0;
  EXPECT_THROW(s.validate(), Error);
  s.alpha = 0.0;
  s.omega = 0.0;
  EXPECT_THROW(s.validate(), Error);
  s.omega = 1.0;
  s.center = {0.0, 0.0};
  EXPECT_THROW(s.validate(), Error);
}

TEST(WaveAreas, HalfOrderFirstArchAndMonotonicity) {
  const auto areas = wave_areas(0.5, 20);
  ASSERT_EQ(areas.size(), 20u);
  const double first =
      quad([](double x) { return std::abs(std::sqrt(2 / (pi * x)) * std::sin(x)); }, pi, 2 * pi);
  EXPECT_NEAR(areas[0], first, 1e-12);
  for (double nu : {0.5, 1.0, 1.5, 2.5}) {
    const auto a = wave_areas(nu, 20);
    for (std::size_t k = 1; k < a.size(); ++k) EXPECT_GT(a[k - 1] - a[k], 0.0) << "nu=" << nu << " k=" << k;
  }
}

TEST(Epsilon0, PlateauProperty) {
  for (double lambda : {0.5, 1.0, 1.5, 2.0}) {
    const Epsilon0 e = find_epsilon0_detailed(lambda);
    ASSERT_GT(e.epsilon0, 0.0);
    ASSERT_LT(e.epsilon0, e.first_zero);
    EXPECT_NEAR(std::abs(script_j(lambda, e.epsilon0)), e.level, 1e-10);
    for (double t = 0.0; t < e.epsilon0; t += e.epsilon0 / 50) EXPECT_GT(std::abs(script_j(lambda, t)), e.level);
    for (double t = e.epsilon0 + 1e-3; t < 80.0; t += 0.01)
      ASSERT_LE(std::abs(script_j(lambda, t)), e.level * (1 + 1e-12)) << "lambda=" << lambda << " t=" << t;
    EXPECT_DOUBLE_EQ(find_epsilon0(lambda), e.epsilon0);
  }
}

TEST(Theta, Formula) {
  for (int d = 1; d <= 3; ++d) {
    for (double alpha : {0.0, 1.0}) {
      const double expected = find_epsilon0(d / 2.0 + alpha) * std::pow(unit_ball_volume(d), 1.0 / d) / (2 * pi);
      EXPECT_NEAR(theta_threshold(d, alpha), expected, 1e-14);
    }
  }
}

TEST(Upsilon, AgainstBesselRoute) {
  for (int d = 1; d <= 5; ++d) {
    const double sj = oracle::bessel_series(d, pi) / std::pow(pi, d);
    const double moment = 0.5 * std::pow(2.0, d) * std::tgamma(d + 0.5) * std::sqrt(pi) * sj;
    const double root = 2.0 / (std::pow(2 * pi, d / 2.0) * std::sqrt(pi)) * moment;
    EXPECT_NEAR(upsilon_d(d), root * root, 1e-10 * root * root) << "d=" << d;
    const double c = unit_ball_volume(d);
    EXPECT_NEAR(kappa_bound(d), std::pow(2.0, d + 1) / (upsilon_d(d) * std::min(1.0, c * c)), 1e-9 * kappa_bound(d));
    EXPECT_GT(kappa_bound(d), 1.0);
  }
}
