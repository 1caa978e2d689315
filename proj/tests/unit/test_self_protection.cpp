#include <gtest/gtest.h>

#include <cmath>

#include "dualrisk/error.hpp"
#include "dualrisk/self_protection.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

namespace {

SelfProtectionProblem calibrated(const WeightingSpec& w, double eps) {
  return {10.0, 4.0, eps, calibrate_effort(EffortModel::Kind::Hyperbolic, w, 4.0, 0.2, 0.5), 0.0, 1.0};
}

}  // namespace

TEST(SelfProtection, LotteryShapes) {
  const SelfProtectionProblem sp = calibrated(WeightingSpec::dual_power(3), 0.0);
  EXPECT_EQ(sp_lottery(sp, 0.3).size(), 2u);
  SelfProtectionProblem with = sp;
  with.epsilon = 0.5;
  const auto states = sp_lottery(with, 0.3);
  ASSERT_EQ(states.size(), 4u);
  double total = 0;
  for (const auto& s : states) total += s.probability;
  EXPECT_NEAR(total, 1.0, 1e-15);
  with.w0 = 4.0;
  EXPECT_THROW(sp_lottery(with, 0.3), Error);
}

// The first-order condition must be the derivative of V, in every regime.
TEST(SelfProtection, FocMatchesCentralDifference) {
  for (const char* text : {"dualpower:m=3", "beta:a=2,b=2", "identity", "tk:gamma=0.69"}) {
    const WeightingSpec w = parse_weighting(text);
    for (double eps : {0.0, 0.5, 1.5, 2.5}) {
      const SelfProtectionProblem sp = calibrated(WeightingSpec::dual_power(3), eps);
      for (double e : {0.1, 0.4, 0.8}) {
        const double h = 1e-6;
        const double numeric = (sp_value(sp, e + h, w) - sp_value(sp, e - h, w)) / (2 * h);
        EXPECT_NEAR(sp_foc_lhs(sp, e, w), numeric, 1e-5) << text << " eps=" << eps << " e=" << e;
      }
    }
  }
}

TEST(SelfProtection, CaseSelectionAndBoundary) {
  const WeightingSpec w = WeightingSpec::dual_power(3);
  EXPECT_EQ(sp_case(calibrated(w, 0.0)), SpCase::NoBackgroundRisk);
  EXPECT_EQ(sp_case(calibrated(w, 1.5)), SpCase::SmallEpsilon);
  EXPECT_EQ(sp_case(calibrated(w, 2.5)), SpCase::LargeEpsilon);
  try {
    sp_case(calibrated(w, 2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CaseBoundary);
  }
}

TEST(SelfProtection, CalibrationPutsTheOptimumAtTheTarget) {
  for (const char* text : {"dualpower:m=3", "beta:a=2,b=2"}) {
    const WeightingSpec w = parse_weighting(text);
    for (auto kind : {EffortModel::Kind::Linear, EffortModel::Kind::Exponential, EffortModel::Kind::Hyperbolic}) {
      const SelfProtectionProblem sp{10.0, 4.0, 0.0, calibrate_effort(kind, w, 4.0, 0.2), 0.0, 1.0};
      EXPECT_NEAR(sp.model.p(0.2), 0.5, 1e-12);
      EXPECT_NEAR(sp_foc_lhs(sp, 0.2, w), 0.0, 1e-12);
      // Linear and exponential models can leave V non-concave, so the
      // stationary point need not be the maximum there.
      const SpSolution sol = sp_solve(sp, w);
      if (kind == EffortModel::Kind::Hyperbolic) EXPECT_TRUE(sol.concave) << text;
      if (sol.concave) EXPECT_NEAR(sol.e_star, 0.2, 1e-7) << text << " " << sp.model.to_string();
      else EXPECT_TRUE(sol.warning.has_value());
    }
  }
}

TEST(SelfProtection, ExpectedValueClosedForm) {
  EffortModel m;
  m.kind = EffortModel::Kind::Exponential;
  m.p0 = 0.9;
  m.k = 2.0;
  const SelfProtectionProblem sp{10.0, 4.0, 0.0, m, 0.0, 3.0};
  const SpSolution s = sp_solve(sp, WeightingSpec::identity());
  EXPECT_NEAR(s.e_star, std::log(2.0 * 0.9 * 4.0) / 2.0, 1e-9);
  EXPECT_TRUE(s.concave);
  EXPECT_FALSE(s.at_lower || s.at_upper);
}

TEST(SelfProtection, BackgroundRiskMovesEffortWithTheShiftTerm) {
  const WeightingSpec prudent = WeightingSpec::dual_power(3), imprudent = WeightingSpec::beta_cdf(2, 2);
  for (double eps : {0.5, 1.5, 2.5}) {
    const BackgroundEffect up = sp_background_effect(calibrated(prudent, eps), prudent);
    EXPECT_EQ(up.direction, 1) << eps;
    EXPECT_TRUE(up.with_risk.concave);
    const BackgroundEffect down = sp_background_effect(calibrated(imprudent, eps), imprudent);
    EXPECT_EQ(down.direction, -1) << eps;
  }
  const BackgroundEffect a = sp_background_effect(calibrated(prudent, 0.5), prudent);
  ASSERT_TRUE(a.shift_at_half.has_value());
  EXPECT_EQ(*a.shift_at_half, q(-3, 8));
  // -h'(1/4) + 2h'(1/2) - h'(3/4) with h' = 3(1-p)^2.
  EXPECT_EQ(*a.shift_at_half, -3 * q(9, 16) + 2 * 3 * q(1, 4) - 3 * q(1, 16));
  const BackgroundEffect b = sp_background_effect(calibrated(imprudent, 0.5), imprudent);
  EXPECT_EQ(*b.shift_at_half, q(3, 4));
  EXPECT_NEAR(b.shift_at_half_real, 0.75, 1e-12);
}

TEST(SelfProtection, OptimaForTheCalibratedStudy) {
  const WeightingSpec prudent = WeightingSpec::dual_power(3), imprudent = WeightingSpec::beta_cdf(2, 2);
  EXPECT_NEAR(sp_solve(calibrated(prudent, 0.5), prudent).e_star, 0.267, 5e-4);
  EXPECT_NEAR(sp_solve(calibrated(prudent, 1.5), prudent).e_star, 0.340, 5e-4);
  EXPECT_NEAR(sp_solve(calibrated(prudent, 2.5), prudent).e_star, 0.365, 5e-4);
  EXPECT_NEAR(sp_solve(calibrated(imprudent, 0.5), imprudent).e_star, 0.136, 5e-4);
  EXPECT_TRUE(sp_solve(calibrated(imprudent, 2.5), imprudent).at_lower);
}

TEST(SelfProtection, ValidationRejectsBadProblems) {
  SelfProtectionProblem sp = calibrated(WeightingSpec::dual_power(3), 0.5);
  sp.e_lo = 2.0;
  EXPECT_THROW(validate(sp), Error);
  sp = calibrated(WeightingSpec::dual_power(3), -1.0);
  EXPECT_THROW(validate(sp), Error);
}

TEST(SelfProtectionConfig, ParsesExplicitAndCalibratedModels) {
  const SelfProtectionConfig a = parse_self_protection_config(
      "# explicit\nwealth = 10\nloss = 4\nepsilon = 1/2\nweighting = dualpower:m=3\neffort = exp:p0=0.9,k=2\n");
  EXPECT_DOUBLE_EQ(a.problem.epsilon, 0.5);
  EXPECT_DOUBLE_EQ(a.problem.e_hi, 1.0);
  EXPECT_EQ(a.problem.model.kind, EffortModel::Kind::Exponential);
  EXPECT_EQ(a.weighting.to_string(), "dualpower:m=3");

  const SelfProtectionConfig b = parse_self_protection_config(
      "wealth = 10\nloss = 4\nweighting = beta:a=2,b=2\neffort = hyperbolic\ncalibrate_at = 0.2\n");
  EXPECT_NEAR(b.problem.model.p(0.2), 0.5, 1e-12);

  try {
    parse_self_protection_config("wealth = 10\nlos = 4\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_self_protection_config("wealth = 10\n"), Error);
}
