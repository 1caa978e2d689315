#include "dualrisk/valuation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "dualrisk/error.hpp"

namespace dualrisk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_knots(const std::vector<std::pair<Rational, Rational>>& knots) {
  if (knots.size() < 2) throw Error(ErrorCode::DomainError, "tabulated utility needs at least two knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (knots[i].first <= knots[i - 1].first)
      throw Error(ErrorCode::DomainError, "tabulated utility knots must be strictly increasing in x");
}

}  // namespace

UtilityFunction UtilityFunction::power(unsigned k) {
  if (k == 0) throw Error(ErrorCode::DomainError, "utility power must be >= 1");
  return UtilityFunction(utility::PowerInt{k});
}

UtilityFunction UtilityFunction::tabulated(std::vector<std::pair<Rational, Rational>> knots) {
  check_knots(knots);
  return UtilityFunction(utility::Tabulated{std::move(knots)});
}

Rational UtilityFunction::operator()(const Rational& x) const {
  return std::visit(overloaded{
                        [&](const utility::Linear&) { return x; },
                        [&](const utility::Quadratic& f) { return Rational(x - f.c * x * x); },
                        [&](const utility::PowerInt& f) { return pow(x, f.k); },
                        [&](const utility::Tabulated& f) {
                          const auto& k = f.knots;
                          if (x < k.front().first || x > k.back().first)
                            throw Error(ErrorCode::DomainError, "outcome " + dualrisk::to_string(x) +
                                                                    " outside the tabulated utility range");
                          for (std::size_t i = 1; i < k.size(); ++i)
                            if (x <= k[i].first)
                              return Rational(k[i - 1].second + (k[i].second - k[i - 1].second) *
                                                                    (x - k[i - 1].first) /
                                                                    (k[i].first - k[i - 1].first));
                          return k.back().second;
                        },
                    },
                    family_);
}

void UtilityFunction::require_monotone_on(const Rational& lo, const Rational& hi) const {
  std::visit(overloaded{
                 [](const utility::Linear&) {},
                 [](const utility::PowerInt&) {},
                 [&](const utility::Quadratic& f) {
                   // u' = 1 - 2 c x is affine, so checking both ends suffices.
                   if (1 - 2 * f.c * lo < 0 || 1 - 2 * f.c * hi < 0)
                     throw Error(ErrorCode::NonMonotoneUtility,
                                 "x - c x^2 decreases on [" + dualrisk::to_string(lo) + ", " +
                                     dualrisk::to_string(hi) + "]");
                 },
                 [&](const utility::Tabulated& f) {
                   const auto& k = f.knots;
                   if (lo < k.front().first || hi > k.back().first)
                     throw Error(ErrorCode::DomainError, "support outside the tabulated utility range");
                   for (std::size_t i = 1; i < k.size(); ++i) {
                     if (k[i].first <= lo || k[i - 1].first >= hi) continue;
                     if (k[i].second < k[i - 1].second)
                       throw Error(ErrorCode::NonMonotoneUtility,
                                   "tabulated utility decreases after x = " + dualrisk::to_string(k[i - 1].first));
                   }
                 },
             },
             family_);
}

std::string UtilityFunction::to_string() const {
  return std::visit(overloaded{
                        [](const utility::Linear&) { return std::string("linear"); },
                        [](const utility::Quadratic& f) { return "quadratic:c=" + dualrisk::to_string(f.c); },
                        [](const utility::PowerInt& f) { return "power:k=" + std::to_string(f.k); },
                        [](const utility::Tabulated& f) {
                          std::string out = "tabulated:";
                          for (std::size_t i = 0; i < f.knots.size(); ++i) {
                            if (i) out += "|";
                            out += dualrisk::to_string(f.knots[i].first) + ":" + dualrisk::to_string(f.knots[i].second);
                          }
                          return out;
                        },
                    },
                    family_);
}

UtilityFunction parse_utility(std::string_view text) {
  const std::string whole(text);
  const auto colon = whole.find(':');
  const std::string name = whole.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : whole.substr(colon + 1);
  auto value_of = [&](const std::string& key) {
    if (body.rfind(key + "=", 0) != 0) throw Error(ErrorCode::ParseError, "expected '" + key + "=' in '" + whole + "'");
    return parse_rational(body.substr(key.size() + 1));
  };
  if (name == "linear") return UtilityFunction::linear();
  if (name == "quadratic") return UtilityFunction::quadratic(value_of("c"));
  if (name == "power") {
    Rational k = value_of("k");
    if (k.get_den() != 1 || k <= 0) throw Error(ErrorCode::ParseError, "utility power must be a positive integer");
    return UtilityFunction::power(static_cast<unsigned>(k.get_num().get_ui()));
  }
  if (name == "tabulated") {
    std::vector<std::pair<Rational, Rational>> knots;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto bar = body.find('|', start);
      std::string item = body.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      auto sep = item.find(':');
      if (sep == std::string::npos) throw Error(ErrorCode::ParseError, "tabulated knots are 'x:u' separated by '|'");
      knots.emplace_back(parse_rational(item.substr(0, sep)), parse_rational(item.substr(sep + 1)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    try {
      return UtilityFunction::tabulated(std::move(knots));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  throw Error(ErrorCode::ParseError, "unknown utility family '" + name + "'");
}

Number dt_value_survival(const Lottery& lottery, const WeightingSpec& w) {
  const Lottery canon = canonical_distribution(lottery);
  Number acc(0);
  Rational prev_x = 0;
  Rational surv = 1;
  for (const auto& s : canon.states()) {
    acc += w.eval_dual(surv) * Number(Rational(s.outcome - prev_x));
    prev_x = s.outcome;
    surv -= s.probability;
  }
  return acc;
}

Number dt_value(const Lottery& lottery, const WeightingSpec& w) {
  const Lottery canon = canonical_distribution(lottery);
  Number acc(0);
  Number prev_h(0);
  Rational cum = 0;
  for (const auto& s : canon.states()) {
    cum += s.probability;
    Number h = w.eval(cum);
    acc += Number(s.outcome) * (h - prev_h);
    prev_h = h;
  }
#ifndef NDEBUG
  {
    Number other = dt_value_survival(canon, w);
    if (acc.is_exact() && other.is_exact()) {
      assert(acc.exact() == other.exact());
    } else {
      const double scale = 1.0 + canon.max_outcome().get_d();
      assert(std::abs(acc.to_double() - other.to_double()) <= 1e-9 * scale);
    }
  }
#endif
  return acc;
}

double dt_value(std::vector<RealState> states, const WeightingSpec& w) {
  if (states.empty()) throw Error(ErrorCode::NonUnitMass, "lottery has no states");
  std::stable_sort(states.begin(), states.end(),
                   [](const RealState& a, const RealState& b) { return a.outcome < b.outcome; });
  double acc = 0.0, prev_h = 0.0, cum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].probability > 0.0))
      throw Error(ErrorCode::NonPositiveProbability, "probability " + format_decimal(states[i].probability));
    cum += states[i].probability;
    double h = i + 1 == states.size() ? 1.0 : w.eval(std::min(cum, 1.0));
    acc += states[i].outcome * (h - prev_h);
    prev_h = h;
  }
  if (std::abs(cum - 1.0) > 1e-12) throw Error(ErrorCode::NonUnitMass, "probabilities sum to " + format_decimal(cum));
  return acc;
}

Rational eu_value(const Lottery& lottery, const UtilityFunction& u) {
  u.require_monotone_on(lottery.min_outcome(), lottery.max_outcome());
  Rational acc = 0;
  for (const auto& s : lottery.states()) acc += s.probability * u(s.outcome);
  return acc;
}

Rational mean(const Lottery& lottery) {
  Rational acc = 0;
  for (const auto& s : lottery.states()) acc += s.probability * s.outcome;
  return acc;
}

Rational raw_moment(const Lottery& lottery, unsigned k) {
  Rational acc = 0;
  for (const auto& s : lottery.states()) acc += s.probability * pow(s.outcome, k);
  return acc;
}

Rational primal_moment(const Lottery& lottery, unsigned k) {
  if (k == 0) throw Error(ErrorCode::DomainError, "moment order must be >= 1");
  const Rational mu = mean(lottery);
  if (k == 1) return mu;
  Rational acc = 0;
  for (const auto& s : lottery.states()) acc += s.probability * pow(Rational(s.outcome - mu), k);
  return acc;
}

Rational dual_moment(const Lottery& lottery, unsigned m) {
  if (m == 0) throw Error(ErrorCode::DomainError, "dual moment order must be >= 1");
  Rational acc = 0;
  Rational prev_x = 0;
  Rational surv = 1;
  for (const auto& s : lottery.states()) {
    acc += pow(surv, m) * (s.outcome - prev_x);
    prev_x = s.outcome;
    surv -= s.probability;
  }
  return acc;
}

MonteCarloEstimate dual_moment_mc_oracle(const Lottery& lottery, unsigned m, std::uint64_t draws, std::uint64_t seed) {
  if (draws == 0) throw Error(ErrorCode::DomainError, "draws must be >= 1");
  if (m == 0) throw Error(ErrorCode::DomainError, "dual moment order must be >= 1");
  std::vector<double> weights, outcomes;
  for (const auto& s : lottery.states()) {
    weights.push_back(s.probability.get_d());
    outcomes.push_back(s.outcome.get_d());
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t d = 0; d < draws; ++d) {
    std::size_t lowest = pick(rng);
    for (unsigned j = 1; j < m; ++j) lowest = std::min(lowest, pick(rng));
    const double x = outcomes[lowest];
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(draws);
  const double est = sum / n;
  const double var = draws > 1 ? std::max(0.0, (sum_sq - n * est * est) / (n - 1.0)) : 0.0;
  return {est, std::sqrt(var / n)};
}

}  // namespace dualrisk
