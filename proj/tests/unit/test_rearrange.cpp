#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "sdr/error.hpp"
#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"

using namespace sdr;

namespace {

std::vector<double> sorted_moduli(const GridFunction& f) {
  std::vector<double> m;
  for (const auto& v : f.values) m.push_back(std::abs(v));
  std::sort(m.begin(), m.end());
  return m;
}

double brute_distribution(const GridFunction& f, double lambda) {
  std::size_t count = 0;
  for (const auto& v : f.values) count += std::abs(v) > lambda;
  return static_cast<double>(count) * f.grid.cell_measure();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(SymmetricRearrange, PreservesMultisetOfModuli) {
  CounterRng rng(1, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const GridFunction f = oracle::random_function(rng, oracle::random_grid(rng), trial % 2 ? 4 : 0);
    const GridFunction s = symmetric_rearrange(f);
    ASSERT_TRUE(s.grid.same_layout(f.grid));
    EXPECT_EQ(sorted_moduli(s), sorted_moduli(f)) << "trial " << trial;
    for (double p : {1.0, 2.0, kInf}) {
      const double a = f.norm_p(p), b = s.norm_p(p);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, a)) << "p=" << p;
    }
  }
}

TEST(SymmetricRearrange, NonincreasingInDistanceOrder) {
  CounterRng rng(2, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const GridFunction f = oracle::random_function(rng, oracle::random_grid(rng), 3);
    const GridFunction s = symmetric_rearrange(f);
    const auto order = distance_order(s.grid);
    for (std::size_t k = 1; k < order.size(); ++k)
      ASSERT_GE(std::abs(s.values[order[k - 1]]), std::abs(s.values[order[k]]));
    for (const auto& v : s.values) EXPECT_EQ(v.imag(), 0.0);
  }
}

TEST(SymmetricRearrange, Idempotent) {
  CounterRng rng(3, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction s = symmetric_rearrange(oracle::random_function(rng, oracle::random_grid(rng), 5));
    EXPECT_EQ(symmetric_rearrange(s).values, s.values);
  }
}

TEST(SymmetricRearrange, L2Contraction) {
  CounterRng rng(4, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = oracle::random_grid(rng);
    const GridFunction f = oracle::random_function(rng, g).abs();
    const GridFunction h = oracle::random_function(rng, g).abs();
    const GridFunction fs = symmetric_rearrange(f), hs = symmetric_rearrange(h);
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      before += std::norm(f.values[i] - h.values[i]);
      after += std::norm(fs.values[i] - hs.values[i]);
    }
    EXPECT_LE(after, before * (1 + 1e-12) + 1e-300);
  }
}

TEST(SymmetricRearrange, OneDimensionalVariationDoesNotGrow) {
  CounterRng rng(5, 0, 0);
  auto variation = [](const GridFunction& f) {
    double tv = std::abs(f.values.front()) + std::abs(f.values.back());
    for (std::size_t i = 1; i < f.size(); ++i) tv += std::abs(std::abs(f.values[i]) - std::abs(f.values[i - 1]));
    return tv;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const GridFunction f = oracle::random_function(rng, Grid::centered(1, 1 + rng.below(40), 0.5));
    EXPECT_LE(variation(symmetric_rearrange(f)), variation(f) + 1e-12);
  }
}

TEST(DistributionFunction, MatchesBruteCount) {
  CounterRng rng(6, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const GridFunction f = oracle::random_function(rng, oracle::random_grid(rng), 6);
    const double top = f.norm_p(kInf);
    if (top == 0.0) continue;
    std::vector<double> lambdas;
    for (int k = 0; k < 32; ++k) lambdas.push_back((k + 0.5) / 32.0 * top);
    const auto d = distribution_function(f, lambdas);
    const auto ds = distribution_function(symmetric_rearrange(f), lambdas);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      EXPECT_EQ(d.measures[k], brute_distribution(f, lambdas[k]));
      EXPECT_EQ(ds.measures[k], d.measures[k]);
    }
  }
}

TEST(DistributionFunction, RejectsUnsortedLevels) {
  const GridFunction f(Grid::centered(1, 4, 1.0), std::vector<Complex>(4, 1.0));
  const std::vector<double> bad = {0.5, 0.25};
  const std::vector<double> neg = {-1.0};
  EXPECT_THROW(distribution_function(f, bad), Error);
  EXPECT_THROW(distribution_function(f, neg), Error);
}

TEST(SetRearrange, BallVolume) {
  for (int d = 1; d <= 5; ++d) {
    for (double v : {0.1, 1.0, 7.5}) {
      const double r = set_rearrange(v, d);
      EXPECT_NEAR(unit_ball_volume(d) * std::pow(r, d), v, 1e-13 * v);
    }
  }
  EXPECT_EQ(set_rearrange(0.0, 2), 0.0);
  EXPECT_THROW(set_rearrange(-1.0, 2), Error);
}

TEST(Profile, EquimeasurableWithInput) {
  CounterRng rng(7, 0, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const GridFunction f = oracle::random_function(rng, oracle::random_grid(rng), 4);
    const RadialProfile p = rearrange_to_profile(f);
    const double top = f.norm_p(kInf);
    for (int k = 0; k < 16 && top > 0; ++k) {
      const double lambda = (k + 0.5) / 16.0 * top;
      EXPECT_NEAR(p.distribution(lambda), brute_distribution(f, lambda), 1e-12 * std::max(1.0, f.grid.size() * 1.0));
    }
    for (std::size_t i = 1; i < p.levels.size(); ++i) EXPECT_GT(p.levels[i - 1], p.levels[i]);
  }
}

TEST(Profile, UserLadderSamplesOuterRadius) {
  const Grid g = Grid::centered(1, 4, 1.0);
  const GridFunction f(g, {1.0, 4.0, 2.0, 3.0});
  // |f|* is 4 on [0, 1/2], 3 to 1, 2 to 3/2, 1 to 2
  const std::vector<double> radii = {0.0, 0.5, 1.25, 2.0};
  const RadialProfile p = rearrange_to_profile(f, radii);
  ASSERT_EQ(p.levels.size(), 3u);
  EXPECT_DOUBLE_EQ(p.levels[0], 4.0);
  EXPECT_DOUBLE_EQ(p.levels[1], 2.0);
  EXPECT_DOUBLE_EQ(p.levels[2], 1.0);
  const std::vector<double> short_ladder = {0.0, 1.0};
  EXPECT_THROW(rearrange_to_profile(f, short_ladder), Error);
}

TEST(StarRearrange, OneDimensionalAndCentred) {
  CounterRng rng(8, 0, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const GridFunction f = oracle::random_function(rng, Grid::centered(2, 1 + rng.below(8), 0.5), 3);
    const GridFunction s = star_rearrange_1d(f);
    ASSERT_EQ(s.dim(), 1u);
    ASSERT_EQ(s.size(), f.size());
    EXPECT_DOUBLE_EQ(s.grid.h, 0.25);
    EXPECT_EQ(sorted_moduli(s), sorted_moduli(f));
    EXPECT_NEAR(s.norm_p(2.0), f.norm_p(2.0), 1e-12 * std::max(1.0, f.norm_p(2.0)));
  }
}

TEST(DecayBound, HoldsForEveryP) {
  CounterRng rng(9, 0, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const GridFunction f = oracle::random_function(rng, oracle::random_grid(rng));
    for (double p : {1.0, 2.0, 3.5}) {
      const InequalityReport r = check_decay_bound(f, p);
      EXPECT_TRUE(r.pass) << r.name << " ratio " << r.ratio;
      EXPECT_TRUE(r.consistent());
    }
  }
}

TEST(DecayBound, RejectsBadExponent) {
  const GridFunction f(Grid::centered(1, 4, 1.0), std::vector<Complex>(4, 1.0));
  EXPECT_THROW(check_decay_bound(f, 0.5), Error);
}
