#include <gtest/gtest.h>

#include "dualrisk/error.hpp"
#include "dualrisk/piecewise.hpp"
#include "dualrisk/polynomial.hpp"
#include "oracles.hpp"

using namespace dualrisk;
using oracle::q;

namespace {

// (t - r1)(t - r2)...
Polynomial from_roots(const std::vector<Rational>& roots) {
  Polynomial p = Polynomial::constant(1);
  for (const auto& r : roots) p = p * Polynomial({-r, Rational(1)});
  return p;
}

}  // namespace

TEST(Polynomial, ArithmeticAndCalculus) {
  const Polynomial p({q(1), q(-3), q(2)});  // 2t^2 - 3t + 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(q(1, 2)), q(0));
  EXPECT_EQ(p.derivative(), Polynomial({q(-3), q(4)}));
  EXPECT_EQ(p.antiderivative().derivative(), p);
  EXPECT_EQ(p.antiderivative()(q(0)), q(0));
  EXPECT_EQ(p.shifted(q(1))(q(0)), p(q(1)));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p * p).degree(), 4);
}

TEST(Polynomial, DivisionAndGcd) {
  const Polynomial a = from_roots({q(1), q(2), q(3)});
  const Polynomial b = from_roots({q(2), q(5)});
  auto [quot, rem] = Polynomial::divmod(a, b);
  EXPECT_EQ(quot * b + rem, a);
  EXPECT_LT(rem.degree(), b.degree());
  EXPECT_EQ(Polynomial::gcd(a, b), from_roots({q(2)}));
  EXPECT_THROW(Polynomial::divmod(a, Polynomial()), Error);
}

TEST(Polynomial, CountsRootsIncludingRepeated) {
  const Polynomial p = from_roots({q(1, 3), q(1, 3), q(1, 2), q(2)});
  EXPECT_EQ(count_roots(p, q(0), q(1)), 2);
  EXPECT_EQ(count_roots(p, q(1, 3), q(1)), 1);  // half-open: 1/3 excluded
  EXPECT_EQ(count_roots(p, q(0), q(3)), 3);
}

TEST(Polynomial, SignScanFindsStrictSigns) {
  // Touches zero at 1/3 without changing sign.
  const Polynomial square = from_roots({q(1, 3), q(1, 3)});
  SignScan s = scan_sign(square, q(0), q(1));
  EXPECT_TRUE(s.has_positive());
  EXPECT_FALSE(s.has_negative());

  const Polynomial cubic = from_roots({q(1, 4), q(1, 2), q(3, 4)});
  s = scan_sign(cubic, q(0), q(1));
  ASSERT_TRUE(s.has_positive() && s.has_negative());
  EXPECT_GT(cubic(*s.positive_at), 0);
  EXPECT_LT(cubic(*s.negative_at), 0);

  // Negative only at the endpoint: the open scan must not see it.
  const Polynomial t({q(0), q(1)});
  EXPECT_TRUE(scan_sign(t, q(-1), q(0), true).has_negative());
  EXPECT_FALSE(scan_sign(t, q(0), q(1), false).has_negative());
}

TEST(PiecewisePoly, IntegralIsContinuous) {
  // Step 1 on [0,1], 3 on [1,2].
  PiecewisePoly f({q(0), q(1), q(2)}, {Polynomial::constant(1), Polynomial::constant(3)});
  PiecewisePoly F = f.integral();
  EXPECT_EQ(F.eval(q(0)), q(0));
  EXPECT_EQ(F.eval(q(1)), q(1));
  EXPECT_EQ(F.eval(q(3, 2)), q(5, 2));
  EXPECT_EQ(F.eval(q(2)), q(4));
}

TEST(PiecewisePoly, DifferenceAndNegativeSearch) {
  PiecewisePoly a({q(0), q(1)}, {Polynomial({q(0), q(1)})});
  PiecewisePoly b({q(0), q(1, 2), q(1)}, {Polynomial::constant(q(1, 4)), Polynomial::constant(q(1, 4))});
  auto neg = find_negative(a - b);
  ASSERT_TRUE(neg.has_value());
  EXPECT_LT(*neg, q(1, 4));
  EXPECT_FALSE(find_negative(b - b).has_value());
}

TEST(PiecewisePoly, IteratedQuantileOfPointMassIsLinear) {
  const Lottery L = Lottery::point_mass(q(3));
  const PiecewisePoly f = iterated_quantile(L, 2);
  EXPECT_EQ(f.eval(q(1, 2)), q(3, 2));
  EXPECT_EQ(f.eval(q(1)), q(3));
}

TEST(PiecewisePoly, SecondIteratedQuantileEndsAtTheMean) {
  const Lottery A = oracle::lot({{q(0), q(1, 6)}, {q(3), q(5, 6)}});
  EXPECT_EQ(iterated_quantile(A, 2).eval(q(1)), q(5, 2));
}

TEST(PiecewisePoly, IteratedCdfSecondOrderIsExpectedShortfall) {
  // F^(2)(x) = E[(x - X)^+].
  const Lottery L = oracle::equal({q(1), q(3)});
  const PiecewisePoly F2 = iterated_cdf(L, 2, q(4));
  EXPECT_EQ(F2.eval(q(2)), q(1, 2));
  EXPECT_EQ(F2.eval(q(4)), q(2));
}
