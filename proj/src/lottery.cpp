#include "dualrisk/lottery.hpp"

#include <algorithm>

#include "dualrisk/error.hpp"

namespace dualrisk {

Lottery Lottery::make(std::vector<State> states) {
  if (states.empty()) throw Error(ErrorCode::NonUnitMass, "lottery has no states");
  Rational total = 0;
  for (const auto& s : states) {
    if (s.probability <= 0)
      throw Error(ErrorCode::NonPositiveProbability, "probability " + to_string(s.probability) + " is not positive");
    if (s.outcome < 0)
      throw Error(ErrorCode::NegativeOutcome, "outcome " + to_string(s.outcome) + " is negative");
    total += s.probability;
  }
  if (total != 1)
    throw Error(ErrorCode::NonUnitMass, "probabilities sum to " + to_string(total));
  std::stable_sort(states.begin(), states.end(),
                   [](const State& a, const State& b) { return a.outcome < b.outcome; });
  return Lottery(std::move(states));
}

Lottery Lottery::point_mass(const Rational& outcome) { return make({{outcome, Rational(1)}}); }

EqualProbLottery EqualProbLottery::make(std::vector<Rational> outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::DomainError, "equal-probability lottery needs n >= 1");
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] < 0)
      throw Error(ErrorCode::NegativeOutcome, "state " + std::to_string(i + 1) + " outcome " + to_string(outcomes[i]));
    if (i > 0 && outcomes[i] < outcomes[i - 1])
      throw Error(ErrorCode::UnsortedOutcomes, "state " + std::to_string(i + 1) + " is below its predecessor");
  }
  return EqualProbLottery(std::move(outcomes));
}

std::optional<EqualProbLottery> EqualProbLottery::from_lottery(const Lottery& lottery, std::size_t n) {
  if (n == 0) return std::nullopt;
  std::vector<Rational> outcomes;
  outcomes.reserve(n);
  for (const auto& s : lottery.states()) {
    Rational units = s.probability * static_cast<unsigned long>(n);
    if (units.get_den() != 1) return std::nullopt;
    for (unsigned long k = 0; k < units.get_num().get_ui(); ++k) outcomes.push_back(s.outcome);
  }
  return EqualProbLottery(std::move(outcomes));
}

Lottery EqualProbLottery::to_lottery() const {
  const Rational p(1, static_cast<unsigned long>(outcomes_.size()));
  std::vector<State> states;
  states.reserve(outcomes_.size());
  for (const auto& x : outcomes_) states.push_back({x, p});
  return Lottery::make(std::move(states));
}

Rational cdf(const Lottery& lottery, const Rational& x) {
  Rational acc = 0;
  for (const auto& s : lottery.states()) {
    if (s.outcome > x) break;
    acc += s.probability;
  }
  return acc;
}

Rational survival(const Lottery& lottery, const Rational& x) { return Rational(1) - cdf(lottery, x); }

Rational quantile(const Lottery& lottery, const Rational& q) {
  if (q <= 0 || q > 1) throw Error(ErrorCode::DomainError, "quantile level " + to_string(q) + " outside (0,1]");
  Rational acc = 0;
  for (const auto& s : lottery.states()) {
    acc += s.probability;
    if (acc >= q) return s.outcome;
  }
  return lottery.max_outcome();
}

Lottery canonical_distribution(const Lottery& lottery) {
  std::vector<State> merged;
  for (const auto& s : lottery.states()) {
    if (!merged.empty() && merged.back().outcome == s.outcome) merged.back().probability += s.probability;
    else merged.push_back(s);
  }
  return Lottery::make(std::move(merged));
}

bool same_distribution(const Lottery& a, const Lottery& b) {
  return canonical_distribution(a) == canonical_distribution(b);
}

Lottery affine(const Lottery& lottery, const Rational& a, const Rational& b) {
  if (a < 0 || b < 0) throw Error(ErrorCode::DomainError, "affine map needs a >= 0 and b >= 0");
  std::vector<State> states = lottery.states();
  for (auto& s : states) s.outcome = a + b * s.outcome;
  return Lottery::make(std::move(states));
}

std::string to_string(const Lottery& lottery) {
  std::string out = "[";
  for (std::size_t i = 0; i < lottery.size(); ++i) {
    if (i) out += "; ";
    out += to_string(lottery.states()[i].outcome) + "," + to_string(lottery.states()[i].probability);
  }
  return out + "]";
}

std::string to_string(const EqualProbLottery& lottery) {
  std::string out = "[";
  for (std::size_t i = 0; i < lottery.size(); ++i) {
    if (i) out += ";";
    out += to_string(lottery[i]);
  }
  return out + "]";
}

}  // namespace dualrisk
