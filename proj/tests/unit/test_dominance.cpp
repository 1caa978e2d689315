#include <gtest/gtest.h>

#include <random>

#include "dualrisk/dominance.hpp"
#include "dualrisk/harness.hpp"
#include "dualrisk/valuation.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

namespace {

const Lottery A = oracle::lot({{q(0), q(1, 6)}, {q(3), q(5, 6)}});
const Lottery B = oracle::lot({{q(1), q(1, 6)}, {q(2), q(1, 2)}, {q(4), q(1, 3)}});
const Lottery C3 = oracle::equal({q(5, 6), q(7, 3), q(23, 6)});
const Lottery D3 = oracle::equal({q(7, 6), q(5, 3), q(25, 6)});

Lottery random_lottery(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(2, 5), x_dist(0, 20);
  std::vector<Rational> xs;
  const int n = n_dist(rng);
  for (int i = 0; i < n; ++i) xs.push_back(q(x_dist(rng)));
  std::sort(xs.begin(), xs.end());
  return oracle::equal(xs);
}

}  // namespace

TEST(DualDominance, DivergenceExampleFailsAtTheSecondDualMoment) {
  const DominanceReport r = dual_sd_check(A, B, 3);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.failed_condition.has_value());
  EXPECT_EQ(*r.failed_condition, "dual_moment_2");
  const auto& c = r.conditions[1];
  EXPECT_EQ(c.tag, "dual_moment_2");
  EXPECT_EQ(*c.lhs, q(25, 12));
  EXPECT_EQ(*c.rhs, q(23, 12));
  // The reverse direction passes the moment condition but the integrated
  // quantiles cross: A's lowest sixth is 0, B's is 1.
  const DominanceReport rev = dual_sd_check(B, A, 2);
  EXPECT_FALSE(rev.holds);
  EXPECT_TRUE(rev.conditions[0].holds);
  EXPECT_TRUE(rev.witness.has_value());
}

TEST(DualDominance, EveryLotteryDominatesItself) {
  for (unsigned m = 1; m <= 5; ++m) {
    EXPECT_TRUE(dual_sd_check(B, B, m).holds) << m;
    EXPECT_TRUE(primal_sd_check(B, B, m).holds) << m;
  }
}

TEST(DualDominance, ThirdOrderApportionmentPair) {
  EXPECT_TRUE(dual_sd_check(C3, D3, 3).holds);
  EXPECT_FALSE(dual_sd_check(D3, C3, 3).holds);
  // Neither is primal third-order dominant.
  EXPECT_FALSE(primal_sd_check(C3, D3, 3).holds);
  EXPECT_FALSE(primal_sd_check(D3, C3, 3).holds);
}

TEST(DualDominance, FirstDegreeIsStateWiseForEqualGrids) {
  const Lottery lo = oracle::equal({q(1), q(2)}), hi = oracle::equal({q(1), q(3)});
  EXPECT_TRUE(dual_sd_check(lo, hi, 1).holds);
  const DominanceReport r = dual_sd_check(hi, lo, 1);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(PrimalDominance, PrudenceDirectionOfTheDivergenceExample) {
  EXPECT_TRUE(primal_sd_check(A, B, 3).holds);
  EXPECT_TRUE(primal_sd_check(A, B, 3, PrimalVariant::Ekern).holds);
  EXPECT_FALSE(primal_sd_check(B, A, 3).holds);
}

TEST(CrossingPattern, ThirdOrderPairCrossesTwice) {
  const CrossingPattern c = crossing_pattern(C3, D3);
  EXPECT_EQ(c.initial_sign, 1);
  ASSERT_EQ(c.changes.size(), 2u);
  EXPECT_EQ(c.changes[0], q(5, 3));
  EXPECT_EQ(c.changes[1], q(23, 6));
}

TEST(CrossingPattern, MeanPreservingSpreadCrossesOnce) {
  const Lottery C2 = oracle::equal({q(5, 6), q(13, 6)}), D2 = oracle::equal({q(7, 6), q(11, 6)});
  const CrossingPattern c = crossing_pattern(C2, D2);
  EXPECT_EQ(c.initial_sign, 1);
  EXPECT_EQ(c.changes.size(), 1u);
  EXPECT_EQ(crossing_pattern(B, B).initial_sign, 0);
}

TEST(Dominance, SecondDegreeDualAndPrimalAgreeAtEqualMeans) {
  std::mt19937_64 rng(5);
  int checked = 0, holds = 0;
  while (checked < 200) {
    Lottery a = random_lottery(rng), b = random_lottery(rng);
    Rational ma = mean(a), mb = mean(b);
    if (ma < mb) std::swap(a, b), std::swap(ma, mb);
    b = affine(b, ma - mb, q(1));
    ++checked;
    const bool dual = dual_sd_check(a, b, 2).holds;
    EXPECT_EQ(dual, primal_sd_check(a, b, 2).holds);
    EXPECT_EQ(dual_sd_check(b, a, 2).holds, primal_sd_check(b, a, 2).holds);
    holds += dual;
  }
  EXPECT_GT(holds, 0);
}

// With dual moments 1..m-1 equal and m-th degree dual dominance, every
// DualPower(j), j >= m, ranks the dominating lottery at least as high.
TEST(Dominance, DominanceWithEqualMomentsOrdersDualPowerValues) {
  for (unsigned m = 2; m <= 4; ++m) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ApportionmentPair pair = random_general_pair(1000 * m + seed, m);
      const Lottery C = pair.c_lottery(), D = pair.d_lottery();
      ASSERT_TRUE(dual_sd_check(C, D, m).holds);
      for (unsigned j = 1; j <= 6; ++j) {
        const Rational diff = dt_value(D, WeightingSpec::dual_power(j)).exact() -
                              dt_value(C, WeightingSpec::dual_power(j)).exact();
        if (j < m)
          EXPECT_EQ(diff, 0);
        else
          EXPECT_GE(diff, 0) << "m=" << m << " j=" << j;
      }
    }
  }
}

TEST(Dominance, ReportRendering) {
  const std::string text = to_string(dual_sd_check(A, B, 3));
  EXPECT_NE(text.find("fails"), std::string::npos);
  EXPECT_NE(text.find("dual_moment_2"), std::string::npos);
}
