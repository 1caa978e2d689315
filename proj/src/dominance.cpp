#include "dualrisk/dominance.hpp"

#include <algorithm>

#include "dualrisk/error.hpp"
#include "dualrisk/valuation.hpp"

namespace dualrisk {

namespace {

DominanceCondition scalar_condition(std::string tag, const Rational& lhs, const Rational& rhs, bool holds) {
  DominanceCondition c;
  c.tag = std::move(tag);
  c.holds = holds;
  c.lhs = lhs;
  c.rhs = rhs;
  return c;
}

DominanceCondition pointwise_condition(std::string tag, const PiecewisePoly& slack) {
  DominanceCondition c;
  c.tag = std::move(tag);
  c.witness = find_negative(slack);
  c.holds = !c.witness.has_value();
  return c;
}

DominanceReport finish(unsigned degree, std::vector<DominanceCondition> conditions) {
  DominanceReport r;
  r.degree = degree;
  r.holds = true;
  for (const auto& c : conditions) {
    if (c.holds) continue;
    if (r.holds) {
      r.failed_condition = c.tag;
      r.witness = c.witness;
    }
    r.holds = false;
  }
  r.conditions = std::move(conditions);
  return r;
}

}  // namespace

DominanceReport dual_sd_check(const Lottery& a, const Lottery& b, unsigned m) {
  if (m == 0) throw Error(ErrorCode::DomainError, "dominance degree must be >= 1");
  std::vector<DominanceCondition> conditions;
  for (unsigned k = 1; k < m; ++k) {
    Rational da = dual_moment(a, k), db = dual_moment(b, k);
    conditions.push_back(scalar_condition("dual_moment_" + std::to_string(k), da, db, da <= db));
  }
  conditions.push_back(pointwise_condition("iterated_quantile_" + std::to_string(m),
                                           iterated_quantile(b, m) - iterated_quantile(a, m)));
  return finish(m, std::move(conditions));
}

DominanceReport primal_sd_check(const Lottery& a, const Lottery& b, unsigned m, PrimalVariant variant) {
  if (m == 0) throw Error(ErrorCode::DomainError, "dominance degree must be >= 1");
  Rational top = std::max(a.max_outcome(), b.max_outcome());
  if (top == 0) top = 1;
  std::vector<DominanceCondition> conditions;
  if (variant == PrimalVariant::Ekern) {
    for (unsigned k = 1; k < m; ++k) {
      Rational ma = raw_moment(a, k), mb = raw_moment(b, k);
      conditions.push_back(scalar_condition("raw_moment_" + std::to_string(k) + "_equal", ma, mb, ma == mb));
    }
  } else {
    for (unsigned k = 2; k < m; ++k) {
      Rational fa = iterated_cdf(a, k, top).eval(top), fb = iterated_cdf(b, k, top).eval(top);
      conditions.push_back(scalar_condition("iterated_cdf_" + std::to_string(k) + "_at_top", fa, fb, fa >= fb));
    }
  }
  conditions.push_back(
      pointwise_condition("iterated_cdf_" + std::to_string(m), iterated_cdf(a, m, top) - iterated_cdf(b, m, top)));
  return finish(m, std::move(conditions));
}

CrossingPattern crossing_pattern(const Lottery& a, const Lottery& b) {
  std::vector<Rational> points;
  for (const auto& s : a.states()) points.push_back(s.outcome);
  for (const auto& s : b.states()) points.push_back(s.outcome);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  CrossingPattern out;
  int current = 0;
  for (const auto& x : points) {
    int s = sign(Rational(cdf(a, x) - cdf(b, x)));
    if (s == 0) continue;
    if (current == 0) out.initial_sign = s;
    else if (s != current) out.changes.push_back(x);
    current = s;
  }
  return out;
}

std::string to_string(const DominanceReport& report) {
  std::string out = "degree " + std::to_string(report.degree) + ": " + (report.holds ? "holds" : "fails");
  if (report.failed_condition) out += " (first failure: " + *report.failed_condition + ")";
  out += "\n";
  for (const auto& c : report.conditions) {
    out += "  " + c.tag + ": " + (c.holds ? "ok" : "violated");
    if (c.lhs && c.rhs) out += "  [" + to_string(*c.lhs) + " vs " + to_string(*c.rhs) + "]";
    if (c.witness) out += "  at " + to_string(*c.witness);
    out += "\n";
  }
  return out;
}

}  // namespace dualrisk
