#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualrisk/lottery.hpp"
#include "dualrisk/piecewise.hpp"

namespace dualrisk {

/// One condition of a dominance definition, evaluated independently.
struct DominanceCondition {
  std::string tag;  // e.g. "dual_moment_2", "iterated_quantile_3"
  bool holds = false;
  std::optional<Rational> lhs;      // value for the dominated lottery, if scalar
  std::optional<Rational> rhs;      // value for the dominating lottery, if scalar
  std::optional<Rational> witness;  // failure point for pointwise conditions
};

struct DominanceReport {
  unsigned degree = 0;
  bool holds = false;
  std::optional<std::string> failed_condition;  // first failing tag
  std::optional<Rational> witness;              // set iff that failure is pointwise
  std::vector<DominanceCondition> conditions;
};

/// Does `b` dominate `a` in m-th degree dual (inverse) stochastic dominance?
/// Conditions: dual moments 1..m-1 of `a` at most those of `b`, and
/// ^mF_a^{-1} <= ^mF_b^{-1} on [0, 1], decided exactly.
DominanceReport dual_sd_check(const Lottery& a, const Lottery& b, unsigned m);

enum class PrimalVariant {
  Plain,  // F_a^(k)(top) >= F_b^(k)(top) for k = 2..m-1, F_a^(m) >= F_b^(m) pointwise
  Ekern,  // raw moments 1..m-1 equal, F_a^(m) >= F_b^(m) pointwise
};

/// Does `b` dominate `a` in m-th degree primal stochastic dominance?
/// Iterated CDFs are taken on [0, top] with top the largest outcome of either.
DominanceReport primal_sd_check(const Lottery& a, const Lottery& b, unsigned m,
                                PrimalVariant variant = PrimalVariant::Plain);

struct CrossingPattern {
  int initial_sign = 0;  // sign of F_a - F_b where it first differs; 0 if identical
  std::vector<Rational> changes;  // outcomes at which the sign flips
};

/// Sign changes of the step function F_a - F_b (zero stretches skipped).
CrossingPattern crossing_pattern(const Lottery& a, const Lottery& b);

std::string to_string(const DominanceReport& report);

}  // namespace dualrisk
