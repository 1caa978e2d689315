#include <gtest/gtest.h>

#include <random>

#include "dualrisk/error.hpp"
#include "dualrisk/valuation.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

namespace {

const Lottery A = oracle::lot({{q(0), q(1, 6)}, {q(3), q(5, 6)}});
const Lottery B = oracle::lot({{q(1), q(1, 6)}, {q(2), q(1, 2)}, {q(4), q(1, 3)}});

Lottery random_lottery(std::mt19937_64& rng, int max_states = 5) {
  std::uniform_int_distribution<int> n_dist(1, max_states), x_dist(0, 12), w_dist(1, 6);
  const int n = n_dist(rng);
  std::vector<std::pair<Rational, Rational>> states;
  Rational total = 0;
  std::vector<int> weights;
  for (int i = 0; i < n; ++i) weights.push_back(w_dist(rng)), total += weights.back();
  for (int i = 0; i < n; ++i) states.emplace_back(q(x_dist(rng), 2), Rational(weights[i] / total));
  return oracle::lot(states);
}

}  // namespace

TEST(Valuation, DivergenceExampleQuadraticValues) {
  for (const Rational& beta : {q(0), q(1, 4), q(1, 2), q(1)}) {
    const WeightingSpec w = WeightingSpec::quadratic(beta);
    auto h = [&](const Rational& p) -> Rational { return (1 + beta) * p - beta * p * p; };
    const Rational va = dt_value(A, w).exact(), vb = dt_value(B, w).exact();
    EXPECT_EQ(va, oracle::dt_value(A, h));
    EXPECT_EQ(vb, oracle::dt_value(B, h));
    EXPECT_EQ(va, q(5, 2) - 5 * beta / 12);
    EXPECT_EQ(vb, q(5, 2) - 7 * beta / 12);
    EXPECT_EQ(va - vb, beta / 6);
  }
}

TEST(Valuation, DualMomentsOfTheDivergenceExample) {
  EXPECT_EQ(dual_moment(A, 2), q(25, 12));
  EXPECT_EQ(dual_moment(B, 2), q(23, 12));
  EXPECT_EQ(dual_moment(A, 2), oracle::dual_moment(A, 2));
  EXPECT_EQ(dual_moment(B, 2), oracle::dual_moment(B, 2));
  EXPECT_EQ(dt_value(A, WeightingSpec::quadratic(q(1))).exact(), q(25, 12));
}

TEST(Valuation, EuQuadraticIsIndifferentBetweenAAndB) {
  for (const Rational& c : {q(1, 16), q(1, 10)}) {
    const UtilityFunction u = UtilityFunction::quadratic(c);
    EXPECT_EQ(eu_value(A, u), eu_value(B, u));
  }
  EXPECT_EQ(mean(A), mean(B));
  EXPECT_EQ(primal_moment(A, 2), primal_moment(B, 2));
  EXPECT_GT(primal_moment(B, 3), primal_moment(A, 3));
}

TEST(Valuation, CdfAndSurvivalFormsAgree) {
  std::mt19937_64 rng(7);
  const std::vector<WeightingSpec> ws{WeightingSpec::dual_power(3), WeightingSpec::quadratic(q(1, 3)),
                                      WeightingSpec::beta_cdf(2, 3), parse_weighting("tabulated:0:0|1/3:1/2|1:1")};
  for (int trial = 0; trial < 200; ++trial) {
    const Lottery L = random_lottery(rng);
    for (const auto& w : ws) EXPECT_EQ(dt_value(L, w).exact(), dt_value_survival(L, w).exact());
  }
}

TEST(Valuation, MatchesBruteForceOnRandomLotteries) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Lottery L = random_lottery(rng, 4);
    for (unsigned m = 1; m <= 3; ++m) EXPECT_EQ(dual_moment(L, m), oracle::dual_moment(L, m));
    for (unsigned k = 2; k <= 4; ++k) EXPECT_EQ(primal_moment(L, k), oracle::central_moment(L, k));
    auto h = [](const Rational& p) -> Rational { return 1 - oracle::power(1 - p, 4); };
    EXPECT_EQ(dt_value(L, WeightingSpec::dual_power(4)).exact(), oracle::dt_value(L, h));
    EXPECT_EQ(dt_value(L, WeightingSpec::dual_power(4)).exact(), dual_moment(L, 4));
  }
}

TEST(Valuation, PointMassCollapsesEverything) {
  const Lottery L = Lottery::point_mass(q(7, 2));
  EXPECT_EQ(dt_value(L, WeightingSpec::tversky_kahneman(0.61)).to_double(), 3.5);
  for (unsigned m = 1; m <= 4; ++m) EXPECT_EQ(dual_moment(L, m), q(7, 2));
  for (unsigned k = 2; k <= 4; ++k) EXPECT_EQ(primal_moment(L, k), q(0));
}

TEST(Valuation, ComonotonicAdditivityAndHomogeneity) {
  // V[a + b L] = a + b V[L] for a, b >= 0.
  const WeightingSpec w = WeightingSpec::beta_cdf(3, 2);
  const Rational v = dt_value(B, w).exact();
  EXPECT_EQ(dt_value(affine(B, q(2), q(3, 2)), w).exact(), 2 + q(3, 2) * v);
}

TEST(Valuation, RealStatesMatchExactValues) {
  std::vector<RealState> states;
  for (const auto& s : B.states()) states.push_back({to_double(s.outcome), to_double(s.probability)});
  std::swap(states[0], states[2]);  // order does not matter
  EXPECT_NEAR(dt_value(states, WeightingSpec::dual_power(3)), to_double(dual_moment(B, 3)), 1e-14);
}

TEST(Valuation, MonteCarloOracleAgreesWithinFiveStandardErrors) {
  for (unsigned m : {2u, 3u, 5u}) {
    const MonteCarloEstimate mc = dual_moment_mc_oracle(B, m, 200000, 2024 + m);
    EXPECT_NEAR(mc.estimate, to_double(dual_moment(B, m)), 5 * mc.std_error) << m;
  }
}

TEST(Valuation, UtilityChecks) {
  EXPECT_THROW(eu_value(oracle::equal({q(1), q(20)}), UtilityFunction::quadratic(q(1, 16))), Error);
  const UtilityFunction u = parse_utility("tabulated:0:0|2:2|8:5");
  EXPECT_EQ(u(q(5)), q(7, 2));
  EXPECT_EQ(parse_utility(u.to_string()).to_string(), u.to_string());
  EXPECT_EQ(eu_value(B, UtilityFunction::linear()), mean(B));
  EXPECT_EQ(eu_value(B, UtilityFunction::power(2)), oracle::central_moment(B, 2) + mean(B) * mean(B));
}
