#include <gtest/gtest.h>

#include <cmath>

#include "dualrisk/error.hpp"
#include "dualrisk/weighting.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

namespace {

Rational exact(const WeightingSpec& w, const Rational& p) { return w.eval(p).exact(); }

}  // namespace

TEST(Weighting, ClosedFamiliesMatchTheirFormulas) {
  const Rational p = q(1, 3);
  EXPECT_EQ(exact(WeightingSpec::identity(), p), p);
  // (1 + beta) p - beta p^2
  EXPECT_EQ(exact(WeightingSpec::quadratic(q(1, 2)), p), q(3, 2) * p - q(1, 2) * p * p);
  EXPECT_EQ(exact(WeightingSpec::power(q(3)), p), p * p * p);
  EXPECT_EQ(exact(WeightingSpec::dual_power(3), p), 1 - oracle::power(1 - p, 3));
  // I_p(2,2) = 3p^2 - 2p^3
  EXPECT_EQ(exact(WeightingSpec::beta_cdf(2, 2), p), 3 * p * p - 2 * p * p * p);
}

TEST(Weighting, QuadraticWithUnitBetaIsDualPowerTwo) {
  for (int i = 0; i <= 12; ++i) {
    const Rational p = q(i, 12);
    EXPECT_EQ(exact(WeightingSpec::quadratic(q(1)), p), exact(WeightingSpec::dual_power(2), p));
  }
}

TEST(Weighting, TranscendentalFamiliesMatchReferenceValues) {
  const double p = 0.3, g = 0.61;
  const double tk = std::pow(p, g) / std::pow(std::pow(p, g) + std::pow(1 - p, g), 1 / g);
  EXPECT_NEAR(WeightingSpec::tversky_kahneman(g).eval(p), tk, 1e-15);
  EXPECT_NEAR(WeightingSpec::prelec(0.65, 1.0).eval(p), std::exp(-std::pow(-std::log(p), 0.65)), 1e-15);
  EXPECT_FALSE(WeightingSpec::prelec(0.65, 1.0).eval(q(1, 2)).is_exact());
  EXPECT_DOUBLE_EQ(WeightingSpec::prelec(0.65, 1.0).eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(WeightingSpec::prelec(0.65, 1.0).eval(1.0), 1.0);
}

TEST(Weighting, TabulatedInterpolatesLinearly) {
  const WeightingSpec w = parse_weighting("tabulated:0:0|1/2:3/4|1:1");
  EXPECT_EQ(exact(w, q(1, 4)), q(3, 8));
  EXPECT_EQ(exact(w, q(3, 4)), q(7, 8));
  EXPECT_NEAR(w.derivative(0.25), 1.5, 1e-8);
}

TEST(Weighting, ValidationRejectsBadFunctions) {
  auto code = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([] { WeightingSpec::quadratic(q(2)); }), ErrorCode::InvalidWeighting);
  EXPECT_EQ(code([] { WeightingSpec::tabulated({{q(0), q(0)}, {q(1, 2), q(3, 4)}, {q(3, 4), q(1, 2)}, {q(1), q(1)}}); }),
            ErrorCode::InvalidWeighting);
  EXPECT_EQ(code([] { WeightingSpec::polynomial(Polynomial({q(0), q(3), q(-2)})); }), ErrorCode::InvalidWeighting);
  EXPECT_EQ(code([] { WeightingSpec::tversky_kahneman(0.2); }), ErrorCode::InvalidWeighting);
  EXPECT_EQ(code([] { WeightingSpec::identity().eval(q(3, 2)); }), ErrorCode::DomainError);
}

TEST(Weighting, ParseAndPrintRoundTrip) {
  for (const char* text : {"identity", "quadratic:beta=1/2", "power:k=3", "dualpower:m=4", "tabulated:0:0|1/3:1/2|1:1",
                           "poly:0,0,3,-2"}) {
    const WeightingSpec w = parse_weighting(text);
    EXPECT_EQ(w.to_string(), text);
    EXPECT_EQ(parse_weighting(w.to_string()).to_string(), w.to_string());
  }
  EXPECT_EQ(parse_weighting("beta:a=2,b=2").to_string(), "poly:0,0,3,-2");
  EXPECT_DOUBLE_EQ(parse_weighting(WeightingSpec::prelec(0.65, 1.0).to_string()).eval(0.3),
                   WeightingSpec::prelec(0.65, 1.0).eval(0.3));
  EXPECT_THROW(parse_weighting("quadratic"), Error);
  EXPECT_THROW(parse_weighting("dualpower:m=1/2"), Error);
}

TEST(Weighting, DerivativesAgreeWithDifferenceQuotients) {
  for (const char* text : {"quadratic:beta=1/2", "dualpower:m=3", "tk:gamma=0.69", "prelec:a=0.65,b=1", "beta:a=2,b=3"}) {
    const WeightingSpec w = parse_weighting(text);
    for (double p : {0.2, 0.5, 0.8}) {
      const double h = 1e-6;
      EXPECT_NEAR(w.derivative(p), (w.eval(p + h) - w.eval(p - h)) / (2 * h), 1e-6) << text << " at " << p;
    }
  }
  EXPECT_EQ(*WeightingSpec::dual_power(3).derivative_exact(q(1, 4)), q(27, 16));
}

// Expanding hbar(p) = 1 - h(1 - p) term by term: the m-th forward difference
// of hbar at (p, s) is (-1)^(m+1) times that of h at (1 - p - m s, s).
TEST(Weighting, ReflectionIdentityForForwardDifferences) {
  const WeightingSpec w = parse_weighting("tabulated:0:0|1/5:1/2|1/2:3/5|4/5:7/10|1:1");
  for (unsigned m = 1; m <= 4; ++m) {
    for (int a = 0; a <= 20; ++a) {
      for (int b = 1; a + static_cast<int>(m) * b <= 20; ++b) {
        const Rational p = q(a, 20), s = q(b, 20);
        Rational dual = 0;
        for (unsigned k = 0; k <= m; ++k)
          dual += ((m - k) % 2 ? -1 : 1) * oracle::binomial(m, k) * w.eval_dual(p + k * s).exact();
        const Rational direct = forward_difference(w, m, 1 - p - m * s, s).exact();
        EXPECT_EQ(dual, (m % 2 ? 1 : -1) * direct) << "m=" << m << " p=" << p << " s=" << s;
      }
    }
  }
}

TEST(Weighting, TabulatedDualReflectsKnots) {
  const WeightingSpec w = parse_weighting("tabulated:0:0|1/4:1/2|1:1");
  const WeightingSpec d = tabulated_dual(w);
  for (int i = 0; i <= 8; ++i) EXPECT_EQ(exact(d, q(i, 8)), w.eval_dual(q(i, 8)).exact());
}

TEST(Weighting, FiniteDifferenceCertificates) {
  EXPECT_EQ(finite_difference_sign(WeightingSpec::quadratic(q(1, 2)), 3, 16).kind, SignKind::Zero);
  EXPECT_EQ(finite_difference_sign(WeightingSpec::dual_power(3), 3, 16).kind, SignKind::NonNegative);
  EXPECT_EQ(finite_difference_sign(WeightingSpec::dual_power(4), 4, 16).kind, SignKind::NonPositive);
  EXPECT_EQ(finite_difference_sign(WeightingSpec::beta_cdf(2, 2), 3, 16).kind, SignKind::NonPositive);

  const WeightingSpec mixed = parse_weighting("tabulated:0:0|1/4:1/2|1/2:1/2|3/4:3/4|1:1");
  const SignCertificate c = finite_difference_sign(mixed, 3, 4);
  ASSERT_EQ(c.kind, SignKind::Mixed);
  ASSERT_TRUE(c.positive && c.negative);
  EXPECT_GT(forward_difference(mixed, 3, c.positive->start, c.positive->step).sign(), 0);
  EXPECT_LT(forward_difference(mixed, 3, c.negative->start, c.negative->step).sign(), 0);
}

TEST(Weighting, TabulatedSamplingKeepsTheCertificate) {
  for (unsigned m = 2; m <= 4; ++m) {
    const WeightingSpec w = WeightingSpec::dual_power(m + 1);
    EXPECT_EQ(finite_difference_sign(tabulate(w, 24), m, 24).kind, finite_difference_sign(w, m, 24).kind);
  }
}

TEST(Weighting, AnalyticSignsOfTheTestFamilies) {
  // DualPower(j): (-1)^(m-1) h^(m) >= 0 for every m <= j.
  for (unsigned m = 2; m <= 5; ++m) {
    const SignKind want = (m - 1) % 2 == 0 ? SignKind::NonNegative : SignKind::NonPositive;
    EXPECT_EQ(analytic_derivative_sign(WeightingSpec::dual_power(m + 1), m).kind, want) << m;
  }
  // I_p(a, b) with a + b - 1 = m: top derivative sign (-1)^(b-1).
  EXPECT_EQ(analytic_derivative_sign(WeightingSpec::beta_cdf(2, 2), 3).kind, SignKind::NonPositive);
  EXPECT_EQ(analytic_derivative_sign(WeightingSpec::beta_cdf(3, 1), 3).kind, SignKind::NonNegative);
  EXPECT_EQ(analytic_derivative_sign(WeightingSpec::quadratic(q(1, 3)), 3).kind, SignKind::Zero);
  // 3p^2 - 2p^3 has h'' = 6 - 12p: both signs.
  EXPECT_EQ(analytic_derivative_sign(WeightingSpec::beta_cdf(2, 2), 2).kind, SignKind::Mixed);
  EXPECT_THROW(analytic_derivative_sign(WeightingSpec::prelec(0.65, 1.0), 3), Error);
}

TEST(Weighting, InverseSCertificateIsReportedNotAssumed) {
  // Transcendental families go through the floating path with a tolerance.
  const SignCertificate c = finite_difference_sign(WeightingSpec::tversky_kahneman(0.61), 3, 64);
  EXPECT_NE(c.kind, SignKind::Zero);
}
