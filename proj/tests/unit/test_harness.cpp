#include <gtest/gtest.h>

#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"
#include "dualrisk/harness.hpp"
#include "dualrisk/valuation.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

TEST(RandomPair, SameSeedSamePair) {
  const ApportionmentPair a = random_general_pair(99, 4), b = random_general_pair(99, 4);
  EXPECT_EQ(a.C, b.C);
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(to_string(a.provenance), to_string(b.provenance));
  EXPECT_NE(to_string(random_general_pair(100, 4).provenance), to_string(a.provenance));
}

TEST(RandomPair, FixedStateCount) {
  EXPECT_EQ(random_general_pair(3, 3, 12).C.size(), 12u);
  EXPECT_THROW(random_general_pair(3, 5, 2), Error);
}

TEST(RandomPair, EqualLowerDualMomentsAndDominance) {
  for (unsigned m = 2; m <= 5; ++m) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const ApportionmentPair p = random_general_pair(seed * 7 + m, m);
      const Lottery C = p.c_lottery(), D = p.d_lottery();
      for (unsigned k = 1; k < m; ++k) EXPECT_EQ(oracle::dual_moment(C, k), oracle::dual_moment(D, k));
      EXPECT_TRUE(dual_sd_check(C, D, m).holds) << "m=" << m << " seed=" << seed;
    }
  }
}

TEST(SignedFamily, EveryMemberHasThePromisedDirection) {
  for (unsigned m = 2; m <= 5; ++m) {
    const auto right = signed_polynomial_family(m, true), flipped = signed_polynomial_family(m, false);
    EXPECT_FALSE(right.empty());
    EXPECT_FALSE(flipped.empty());
    for (const auto& w : right) EXPECT_EQ(predicted_direction(w, m), 1) << w.to_string();
    for (const auto& w : flipped) EXPECT_EQ(predicted_direction(w, m), -1) << w.to_string();
  }
  EXPECT_EQ(signed_polynomial_family(3, true).size(), 9u);
  EXPECT_EQ(signed_polynomial_family(3, false).size(), 1u);
}

TEST(SignedFamily, ConvexCombinationsKeepTheSign) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(predicted_direction(random_signed_weighting(rng, 4, true), 4), 1);
    EXPECT_EQ(predicted_direction(random_signed_weighting(rng, 4, false), 4), -1);
  }
  EXPECT_EQ(predicted_direction(WeightingSpec::quadratic(q(1, 2)), 3), 0);
  EXPECT_EQ(predicted_direction(WeightingSpec::beta_cdf(2, 2), 2), std::nullopt);
}

TEST(RandomTabulated, IsAValidWeighting) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const WeightingSpec w = random_tabulated(rng, 12);
    EXPECT_EQ(w.eval(q(0)).exact(), 0);
    EXPECT_EQ(w.eval(q(1)).exact(), 1);
    for (int k = 1; k <= 12; ++k) EXPECT_GE(w.eval(q(k, 12)).exact(), w.eval(q(k - 1, 12)).exact());
  }
}

TEST(Converse, MixedCertificateYieldsBothPreferences) {
  const WeightingSpec w = parse_weighting("tabulated:0:0|1/4:1/2|1/2:1/2|3/4:3/4|1:1");
  const ConverseResult r = converse_search(w, 3, 4);
  ASSERT_EQ(r.certificate.kind, SignKind::Mixed);
  ASSERT_TRUE(r.success());
  EXPECT_GT(preference_direction(*r.d_preferred, w).sign, 0);
  EXPECT_LT(preference_direction(*r.c_preferred, w).sign, 0);
  // Both pairs are genuine order-3 pairs.
  EXPECT_TRUE(dual_sd_check(r.d_preferred->c_lottery(), r.d_preferred->d_lottery(), 3).holds);
}

TEST(Converse, SignedWeightingHasOnlyOneSide) {
  const ConverseResult r = converse_search(WeightingSpec::dual_power(3), 3, 12);
  EXPECT_EQ(r.certificate.kind, SignKind::NonNegative);
  EXPECT_FALSE(r.c_preferred.has_value());
}

TEST(Verify, AllSixStatementsPass) {
  for (unsigned t = 1; t <= 6; ++t) {
    VerifyOptions opt;
    opt.theorem = t;
    opt.trials = 30;
    opt.seed = 7;
    const VerifyReport r = verify_theorem(opt);
    EXPECT_TRUE(r.passed()) << r.summary() << "\n" << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.checks, 0u);
  }
}

TEST(Verify, SummaryAndOptions) {
  VerifyOptions opt;
  opt.theorem = 5;
  opt.order = 6;
  opt.trials = 5;
  const VerifyReport r = verify_theorem(opt);
  EXPECT_EQ(r.order, 6u);
  EXPECT_EQ(r.summary().rfind("theorem 5 (order 6): 5 trials, ", 0), 0u);
  EXPECT_NE(r.summary().find(": PASS"), std::string::npos);

  // A signed h has no converse witness: every trial is vacuous.
  opt.theorem = 2;
  opt.order.reset();
  opt.weighting = WeightingSpec::dual_power(3);
  const VerifyReport v = verify_theorem(opt);
  EXPECT_EQ(v.vacuous, 5u);
  EXPECT_TRUE(v.passed());

  opt.theorem = 7;
  EXPECT_THROW(verify_theorem(opt), Error);
}
