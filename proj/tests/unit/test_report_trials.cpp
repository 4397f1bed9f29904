#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sdr/error.hpp"
#include "sdr/report.hpp"
#include "sdr/trials.hpp"

using namespace sdr;

namespace {

InequalityReport make(double lhs, double rhs, double constant = 1.0, double tol = 0.0,
                      ReportKind kind = ReportKind::bound) {
  InequalityReport r;
  r.name = "probe";
  r.kind = kind;
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant_used = constant;
  r.tolerance = tol;
  r.finalize();
  return r;
}

}  // namespace

TEST(Report, BoundVerdicts) {
  EXPECT_TRUE(make(1.0, 1.0).pass_raw);
  EXPECT_FALSE(make(1.01, 1.0).pass);
  const InequalityReport slack = make(1.01, 1.0, 1.0, 0.02);
  EXPECT_FALSE(slack.pass_raw);
  EXPECT_TRUE(slack.pass);
  EXPECT_TRUE(make(3.0, 1.0, 3.0).pass);
  EXPECT_DOUBLE_EQ(make(3.0, 2.0).ratio, 1.5);
}

TEST(Report, DegenerateAndNonFinite) {
  const InequalityReport zero = make(0.0, 0.0);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.ratio, 0.0);
  const InequalityReport blowup = make(1.0, 0.0);
  EXPECT_TRUE(std::isinf(blowup.ratio));
  EXPECT_FALSE(blowup.pass);
  EXPECT_FALSE(make(std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
  EXPECT_FALSE(make(1.0, std::numeric_limits<double>::infinity()).pass);
}

TEST(Report, EmpiricalKindRecordsConstant) {
  const InequalityReport r = make(5.0, 2.0, 1.0, 0.0, ReportKind::empirical);
  EXPECT_DOUBLE_EQ(r.constant_used, 2.5);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(make(1.0, 0.0, 1.0, 0.0, ReportKind::empirical).pass);
  EXPECT_FALSE(make(1.0, 1.0, 1.0, 0.0, ReportKind::exploration).is_verdict());
}

TEST(Report, ConsistencyDetectsTampering) {
  InequalityReport r = make(2.0, 1.0);
  EXPECT_TRUE(r.consistent());
  r.pass = true;
  EXPECT_FALSE(r.consistent());
}

TEST(Report, JsonRoundTrip) {
  InequalityReport r = make(0.75, 1.0 / 3.0, 2.0, 1e-3);
  r.statement = "a, \"quoted\" statement";
  r.metadata["h"] = 0.0625;
  r.metadata["x"] = 1e-300;
  r.tags["generator"] = "gaussian-mix";
  const InequalityReport back = report_from_json(to_json(r));
  EXPECT_EQ(back.name, r.name);
  EXPECT_EQ(back.statement, r.statement);
  EXPECT_EQ(back.lhs, r.lhs);
  EXPECT_EQ(back.rhs, r.rhs);
  EXPECT_EQ(back.ratio, r.ratio);
  EXPECT_EQ(back.pass, r.pass);
  EXPECT_EQ(back.metadata, r.metadata);
  EXPECT_EQ(back.tags, r.tags);
  EXPECT_THROW(report_from_json("{not json"), Error);
}

TEST(Report, InfiniteRatioSurvivesAsNull) {
  const InequalityReport r = make(1.0, 0.0);
  const std::string text = to_json(r);
  EXPECT_NE(text.find("null"), std::string::npos);
  const InequalityReport back = report_from_json(text);
  EXPECT_FALSE(std::isfinite(back.ratio));
  EXPECT_FALSE(back.pass);
}

TEST(Report, DocumentAndCsv) {
  const std::vector<InequalityReport> rs = {make(1, 2), make(3, 1)};
  const std::string doc = reports_to_json(rs, {{"seed", "7"}});
  EXPECT_NE(doc.find("\"seed\": \"7\""), std::string::npos);
  const auto back = reports_from_json(doc);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].lhs, 3.0);
  const std::string header = csv_header();
  const std::string row = to_csv_row(rs[0]);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

TEST(CounterRng, PureFunctionOfKey) {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(1, 3, 3);
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
  }
}

TEST(CounterRng, RangesAndMoments) {
  CounterRng rng(42, 0, 0);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  std::set<std::size_t> seen;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = rng.normal();
    mean += z;
    var += z * z;
    const std::size_t b = rng.below(7);
    ASSERT_LT(b, 7u);
    seen.insert(b);
  }
  EXPECT_NEAR(mean / n, 0.0, 0.05);
  EXPECT_NEAR(var / n, 1.0, 0.05);
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Trials, DefaultFamilies) {
  const TrialFamily f1 = default_family(Generator::gaussian_mix, 1, 3, 10);
  EXPECT_EQ(f1.n, 256u);
  EXPECT_DOUBLE_EQ(f1.grid().h, 1.0 / 16);
  const TrialFamily f2 = default_family(Generator::random_step, 2, 3, 10);
  EXPECT_EQ(f2.n, 64u);
  EXPECT_DOUBLE_EQ(f2.grid().h, 1.0 / 8);
  EXPECT_EQ(parse_generator(to_string(Generator::modulated_bump)), Generator::modulated_bump);
  EXPECT_THROW(parse_generator("nope"), Error);
}

TEST(Trials, ReplayableAndNonTrivial) {
  for (Generator g : {Generator::indicator_union, Generator::random_step, Generator::gaussian_mix,
                      Generator::modulated_bump}) {
    const TrialFamily fam = default_family(g, 1, 17, 8);
    for (std::size_t i = 0; i < 8; ++i) {
      const GridFunction a = make_trial(fam, i), b = make_trial(fam, i);
      EXPECT_EQ(a.values, b.values);
      EXPECT_GT(a.norm_p(1.0), 0.0) << to_string(g) << " " << i;
      EXPECT_NE(make_trial(fam, i, 1).values, a.values);
    }
  }
}

TEST(Trials, BoxUnionStaysWithinReach) {
  const Grid lattice = Grid::centered(2, 40, 0.1);
  for (std::size_t i = 0; i < 30; ++i) {
    const GridFunction s = make_box_union(lattice, 0.8, 5, i, 2);
    EXPECT_GT(s.support_measure(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s.values[k] == Complex(0.0)) continue;
      EXPECT_EQ(s.values[k], Complex(1.0));
      for (double x : lattice.center_of(k)) EXPECT_LE(std::abs(x), 0.8 + 1e-12);
    }
  }
}
