#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sdr/error.hpp"
#include "sdr/quadrature.hpp"

using namespace sdr;

TEST(Gegenbauer, MassAndEvenMoments) {
  for (double mu : {-0.25, 0.0, 0.5, 1.0, 3.5}) {
    const auto rule = gauss_gegenbauer(mu, 12);
    ASSERT_EQ(rule->nodes.size(), 12u);
    double mass = 0.0;
    for (double w : rule->weights) mass += w;
    EXPECT_NEAR(mass, gegenbauer_mass(mu), 1e-13 * gegenbauer_mass(mu));
    for (int k = 1; k <= 10; ++k) {
      double m = 0.0;
      for (std::size_t i = 0; i < rule->nodes.size(); ++i) m += rule->weights[i] * std::pow(rule->nodes[i], 2 * k);
      const double exact = std::tgamma(k + 0.5) * std::tgamma(mu + 0.5) / std::tgamma(k + mu + 1);
      EXPECT_NEAR(m, exact, 1e-12 * exact) << "mu=" << mu << " k=" << k;
    }
  }
  EXPECT_NEAR(gegenbauer_mass(0.0), std::numbers::pi, 1e-15);
}

TEST(Gegenbauer, CachedAndValidated) {
  EXPECT_EQ(gauss_gegenbauer(0.75, 8).get(), gauss_gegenbauer(0.75, 8).get());
  EXPECT_THROW(gauss_gegenbauer(-0.5, 8), Error);
  EXPECT_THROW(gauss_gegenbauer(1.0, 0), Error);
}

TEST(Laguerre, Moments) {
  for (double a : {-0.5, 0.0, 1.5}) {
    const auto rule = gauss_laguerre(a, 16);
    for (int m = 0; m <= 12; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule->nodes.size(); ++i) s += rule->weights[i] * std::pow(rule->nodes[i], m);
      const double exact = std::tgamma(m + a + 1);
      EXPECT_NEAR(s, exact, 1e-11 * exact) << "a=" << a << " m=" << m;
    }
  }
  EXPECT_THROW(gauss_laguerre(-1.0, 4), Error);
}

TEST(Adaptive, SmoothAndSingular) {
  double err = 0.0;
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13, &err), 2.0, 1e-13);
  EXPECT_LT(err, 1e-10);
  EXPECT_NEAR(integrate_endpoint([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-12);
  EXPECT_NEAR(integrate_endpoint([](double x) { return std::log(x); }, 0.0, 1.0), -1.0, 1e-12);
}

TEST(Legendre30, PolynomialExactness) {
  EXPECT_NEAR(gauss_legendre_30([](double x) { return std::pow(x, 10); }, 0.0, 2.0), std::pow(2.0, 11) / 11, 1e-11);
  EXPECT_NEAR(gauss_legendre_30([](double x) { return std::pow(x, 59); }, -1.0, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(gauss_legendre_30([](double x) { return std::exp(x); }, 0.0, 1.0), std::exp(1.0) - 1, 1e-15);
}
