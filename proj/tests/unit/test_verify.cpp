#include <gtest/gtest.h>

#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sdr/error.hpp"
#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"
#include "sdr/verify.hpp"

using namespace sdr;
using std::numbers::pi;

namespace {

GridFunction gaussian(const Grid& g, std::vector<double> centre, double scale = 1.0) {
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    double q = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) q += std::pow((x[k] - centre[k]) / scale, 2);
    f.values[i] = std::exp(-pi * q);
  }
  return f;
}

GridFunction mask_function(unsigned mask, int n) {
  GridFunction f(Grid::centered(1, static_cast<std::size_t>(n), 1.0));
  for (int k = 0; k < n; ++k) f.values[k] = (mask >> k & 1u) ? 1.0 : 0.0;
  return f;
}

GridFunction ball_set(const Grid& lattice, double r) {
  GridFunction s(lattice);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (lattice.center_norm2(i) <= r * r) s.values[i] = 1.0;
  return s;
}

}  // namespace

TEST(HardyLittlewood, AgainstSortedPairing) {
  CounterRng rng(31, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = oracle::random_grid(rng);
    const GridFunction f = oracle::random_function(rng, g, trial % 3);
    const GridFunction h = oracle::random_function(rng, g, trial % 3);
    std::vector<double> a, b;
    double direct = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      a.push_back(std::abs(f.values[i]));
      b.push_back(std::abs(h.values[i]));
      direct += a.back() * b.back();
    }
    const InequalityReport r = verify_hardy_littlewood(f, h);
    const double cell = g.cell_measure();
    EXPECT_NEAR(r.rhs, cell * oracle::sorted_pairing(a, b), 1e-13 * std::max(1.0, r.rhs));
    EXPECT_NEAR(r.lhs, cell * direct, 1e-13 * std::max(1.0, r.lhs));
    EXPECT_TRUE(r.pass_raw || r.lhs <= r.rhs * (1 + tolerance::kExact));
    EXPECT_TRUE(r.pass);
  }
}

TEST(HardyLittlewood, RejectsMismatchedGrids) {
  EXPECT_THROW(verify_hardy_littlewood(GridFunction(Grid::centered(1, 4, 1.0)), GridFunction(Grid::centered(1, 5, 1.0))),
               Error);
}

TEST(Riesz, ExhaustiveSmallGridsAgainstEighths) {
  for (int n = 1; n <= 4; ++n) {
    const unsigned top = 1u << n;
    for (unsigned f = 0; f < top; ++f) {
      for (unsigned g = 0; g < top; ++g) {
        for (unsigned c = 0; c < top; ++c) {
          const InequalityReport r = verify_riesz(mask_function(f, n), mask_function(g, n), mask_function(c, n));
          const double lhs = oracle::riesz_eighths(f, g, c, n) / 8.0;
          const double rhs =
              oracle::riesz_centred_eighths(std::popcount(f), std::popcount(g), std::popcount(c)) / 8.0;
          ASSERT_EQ(r.lhs, lhs) << n << ":" << f << "," << g << "," << c;
          ASSERT_EQ(r.rhs, rhs) << n << ":" << f << "," << g << "," << c;
          ASSERT_TRUE(r.pass);
        }
      }
    }
  }
}

TEST(Riesz, CentredIntervalsAreEqualityCase) {
  EXPECT_EQ(oracle::riesz_centred_eighths(1, 1, 1), 6);
  const InequalityReport r = verify_riesz(mask_function(0b00110, 5) , mask_function(0b01110, 5), mask_function(0b00100, 5));
  EXPECT_GE(r.rhs, r.lhs);
}

TEST(Riesz, RequiresOneDimension) {
  const GridFunction f(Grid::centered(2, 3, 1.0));
  EXPECT_THROW(riesz_functional(f, f, f), Error);
}

TEST(GaussianEquality, OneDimensionalExact) {
  const Grid g = Grid::centered(1, 256, 1.0 / 16);
  const GridFunction phi = gaussian(g, {0.3});
  const GridFunction chi = gaussian(g, {0.0}, 1.3);
  EXPECT_NEAR(verify_weight(chi, phi).ratio, 1.0, 1e-12);
  EXPECT_NEAR(verify_dual_sobolev(phi, 1.0).ratio, 1.0, 1e-12);
  EXPECT_NEAR(verify_lieb(phi, 1.0).ratio, 1.0, 1e-12);
  EXPECT_NEAR(verify_lieb(phi, 0.5).ratio, 1.0, 1e-12);
  EXPECT_NEAR(verify_montgomery(phi, ball_set(frequency_lattice(g), 0.5)).ratio, 1.0, 1e-12);
}

TEST(GaussianEquality, TwoDimensionalWithinBudget) {
  const double h = 1.0 / 8;
  const Grid g = Grid::centered(2, 64, h);
  const GridFunction phi = gaussian(g, {0.3, -0.2});
  EXPECT_NEAR(verify_lieb(phi, 0.5).ratio, 1.0, tolerance::kLieb * h);
  EXPECT_NEAR(verify_dual_sobolev(phi, 1.0).ratio, 1.0, tolerance::kDualSobolev * h);
  const InequalityReport lieb = verify_lieb(phi, 1.0);
  EXPECT_TRUE(lieb.pass);
  EXPECT_DOUBLE_EQ(lieb.tolerance, tolerance::kLieb * h);
}

TEST(Lieb, PackagedFormAndDomain) {
  const GridFunction phi = gaussian(Grid::centered(1, 128, 1.0 / 8), {0.0});
  const InequalityReport r = verify_lieb(phi, 0.5);
  EXPECT_DOUBLE_EQ(r.metadata.at("C_s"), std::pow(2.0, 0.25));
  EXPECT_EQ(r.metadata.at("packaged_pass"), 1.0);
  EXPECT_THROW(verify_lieb(phi, 1.5), Error);
  EXPECT_THROW(verify_lieb(phi, 0.0), Error);
}

TEST(ToleranceOverride, ReplacesBudget) {
  const GridFunction phi = gaussian(Grid::centered(1, 128, 1.0 / 8), {0.0});
  CheckOptions opt;
  opt.tolerance = 0.25;
  EXPECT_DOUBLE_EQ(verify_lieb(phi, 1.0, opt).tolerance, 0.25);
}

TEST(PsiFactor, ThreeRegimes) {
  EXPECT_DOUBLE_EQ(psi_factor(3.0, 3, 0.0), 4.0);             // below critical: (1+s)^1
  EXPECT_DOUBLE_EQ(psi_factor(3.0, 3, 1.0), std::log1p(3.0));  // critical alpha = 1
  EXPECT_DOUBLE_EQ(psi_factor(3.0, 3, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(psi_factor(5.0, 1, 0.0), std::log1p(5.0));
  EXPECT_THROW(psi_factor(-1.0, 1, 0.0), Error);
}

TEST(Gibbs, IntegralAgainstSineIntegral) {
  for (double s : {0.01, 0.25, 0.5, 1.0, 3.7, 10.0, 123.456, 1000.0})
    EXPECT_NEAR(gibbs_integral(s), oracle::gibbs(s), 1e-12) << "s=" << s;
  EXPECT_NEAR(oracle::gibbs(1000.0), 0.5 - 1.0 / (2 * pi * pi * 1000.0), 1e-9);
}

TEST(Gibbs, ReportsPass) {
  const auto reports = gibbs_check();
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.name;
    EXPECT_TRUE(r.consistent());
  }
}

TEST(PropDs, IndicatorClosedForm) {
  const Grid g = Grid::centered(1, 512, 1.0 / 32);
  GridFunction ind(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.center(0, i);
    if (x > 0.25 && x < 0.75) ind.values[i] = 1.0;
  }
  const double exact =
      (oracle::sine_integral(1.5 * pi) - oracle::sine_integral(0.5 * pi)) / (2 * oracle::sine_integral(0.5 * pi));
  const InequalityReport r = verify_prop_ds(ind, 0.0, 1.0);
  EXPECT_NEAR(r.ratio, exact, tolerance::kPropDs / 32);
  EXPECT_TRUE(r.pass);
}

TEST(PropDs, ThresholdIsAPrecondition) {
  const Grid g = Grid::centered(1, 64, 0.25);
  GridFunction wide(g);
  for (auto& v : wide.values) v = 1.0;
  try {
    verify_prop_ds(wide, 0.0, 1.0);
    FAIL() << "expected a precondition error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(Montgomery, InputValidation) {
  const GridFunction phi = gaussian(Grid::centered(1, 64, 0.25), {0.0});
  const Grid lat = frequency_lattice(phi.grid);
  EXPECT_THROW(verify_montgomery(phi, GridFunction(Grid::centered(2, 8, 0.1))), Error);
  EXPECT_THROW(verify_montgomery(phi, GridFunction(lat)), Error);
  GridFunction half(lat);
  half.values[3] = 0.5;
  EXPECT_THROW(verify_montgomery(phi, half), Error);
}

TEST(Montgomery, ConstantIsKappa) {
  CounterRng rng(32, 0, 0);
  const GridFunction f = oracle::random_function(rng, Grid::centered(1, 64, 0.25));
  const InequalityReport r = verify_montgomery(f, ball_set(frequency_lattice(f.grid), 0.7));
  EXPECT_DOUBLE_EQ(r.constant_used, kappa_bound(1));
  EXPECT_TRUE(r.pass);
}

TEST(CorWeight, SingleLevelReproducesMontgomery) {
  CounterRng rng(33, 0, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction f = oracle::random_function(rng, Grid::centered(1 + trial % 2, 16, 0.25));
    const GridFunction sigma = ball_set(frequency_lattice(f.grid), 0.3 + 0.1 * trial);
    const InequalityReport a = verify_montgomery(f, sigma);
    const InequalityReport b = verify_cor_weight(f, sigma);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs, b.rhs);
  }
}

TEST(CorWeight, RejectsNegativeWeight) {
  const GridFunction f = gaussian(Grid::centered(1, 16, 0.5), {0.0});
  GridFunction w(frequency_lattice(f.grid));
  w.values[2] = -1.0;
  EXPECT_THROW(verify_cor_weight(f, w), Error);
}

TEST(Conjecture, ExplorationIsThreadIndependent) {
  TrialFamily fam = default_family(Generator::random_step, 1, 5, 12);
  fam.n = 64;
  const ConjectureExploration a = explore_conjecture1(fam, {}, 1);
  const ConjectureExploration b = explore_conjecture1(fam, {}, 3);
  EXPECT_EQ(a.ratios, b.ratios);
  EXPECT_EQ(a.argmax, b.argmax);
  for (const auto& r : a.reports) EXPECT_FALSE(r.is_verdict());
  for (std::size_t k = 1; k < a.running_max.size(); ++k) EXPECT_GE(a.running_max[k], a.running_max[k - 1]);
}

TEST(EstimateConstant, HardyLittlewoodControlIsOne) {
  TrialFamily fam = default_family(Generator::random_step, 1, 9, 20);
  const ConstantEstimate e = estimate_constant(fam, "hardy-littlewood", 2);
  EXPECT_TRUE(e.control);
  EXPECT_EQ(e.value, 1.0);
  EXPECT_EQ(e.trials, 20u);
  EXPECT_THROW(estimate_constant(fam, "no-such-inequality"), Error);
}

TEST(ParallelFor, VisitsEachIndexOnce) {
  for (std::size_t threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(97);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(StarTheorems, ReportsAreFinite) {
  const GridFunction f = gaussian(Grid::centered(2, 32, 0.125), {0.1, 0.0});
  StarParams p;
  p.sigma = ball_set(frequency_lattice(f.grid), 0.5);
  const StarReports r = verify_star_theorems(f, p);
  EXPECT_TRUE(std::isfinite(r.concentration.ratio));
  EXPECT_TRUE(r.montgomery.pass);
}
