#include "dualrisk/harness.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"
#include "dualrisk/valuation.hpp"

namespace dualrisk {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

GapSpec random_gaps(std::mt19937_64& rng, unsigned m) {
  GapSpec g;
  for (unsigned k = 3; k <= m; ++k) g.shifts.push_back(static_cast<std::size_t>(uniform(rng, 1, 3)));
  return g;
}

int direction_from(SignKind kind, unsigned m) {
  const int parity = (m - 1) % 2 == 0 ? 1 : -1;
  switch (kind) {
    case SignKind::Zero: return 0;
    case SignKind::NonNegative: return parity;
    case SignKind::NonPositive: return -parity;
    case SignKind::Mixed: break;
  }
  return 2;
}

std::string pair_record(const ApportionmentPair& pair) {
  std::string out = to_string(pair.provenance);
  out += "C=" + to_string(pair.C) + "\nD=" + to_string(pair.D) + "\n";
  return out;
}

}  // namespace

ApportionmentPair random_general_pair(std::uint64_t seed, unsigned m, std::optional<std::size_t> states) {
  if (m < 2) throw Error(ErrorCode::DomainError, "order must be >= 2");
  std::mt19937_64 rng(seed);
  // Per-state increments stay below 2^(m-1) max(delta) <= 1/8, under the
  // smallest base gap of 1/2.
  const Rational scale = pow(Rational(2), m + 2);
  const Rational delta_good = 1 / (scale * uniform(rng, 1, 3));
  const Rational delta_bad = 1 / (scale * uniform(rng, 1, 3));
  const GapSpec gaps_good = random_gaps(rng, m);
  const GapSpec gaps_bad = random_gaps(rng, m);
  const std::size_t span_good = make_blocks(m, 0, delta_good, gaps_good).good.span();
  const std::size_t span_bad = make_blocks(m, 0, delta_bad, gaps_bad).bad.span();
  const std::size_t extra = static_cast<std::size_t>(uniform(rng, 0, 3));
  const std::size_t n = states.value_or(span_good + span_bad + extra);
  if (n < std::max(span_good, span_bad) + 1)
    throw Error(ErrorCode::DomainError, std::to_string(n) + " states cannot hold blocks of spans " +
                                            std::to_string(span_good) + " and " + std::to_string(span_bad));

  std::vector<Rational> xs{Rational(uniform(rng, 1, 4))};
  for (std::size_t i = 1; i < n; ++i) xs.push_back(xs.back() + fraction(uniform(rng, 1, 6), 2));
  const EqualProbLottery base = EqualProbLottery::make(std::move(xs));

  const long top_good = static_cast<long>(n - span_good);
  const long top_bad = static_cast<long>(n - span_bad);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const long d_good = uniform(rng, 0, top_good);
    if (d_good + 1 > top_bad) continue;
    const long d_bad = uniform(rng, d_good + 1, top_bad);
    const long c_bad = uniform(rng, 0, std::min(d_bad, top_bad));
    const long lo_good = std::max(d_good, c_bad + 1);
    if (lo_good > top_good) continue;
    const long c_good = uniform(rng, lo_good, top_good);
    ApportionmentPair pair =
        make_general_pair(base, m, delta_good, gaps_good, delta_bad, gaps_bad, static_cast<std::size_t>(d_good),
                          static_cast<std::size_t>(d_bad), static_cast<std::size_t>(c_bad),
                          static_cast<std::size_t>(c_good));
    pair.provenance.seed = seed;
    return pair;
  }
  throw std::logic_error("no admissible block positions found");
}

WeightingSpec random_tabulated(std::mt19937_64& rng, unsigned grid) {
  if (grid < 2) throw Error(ErrorCode::DomainError, "tabulated grid must be >= 2");
  std::vector<Rational> steps;
  Rational total = 0;
  for (unsigned i = 0; i < grid; ++i) {
    Rational s = fraction(uniform(rng, 0, 12), uniform(rng, 1, 12));
    steps.push_back(s);
    total += s;
  }
  if (total == 0) {
    steps.assign(grid, Rational(1));
    total = grid;
  }
  std::vector<std::pair<Rational, Rational>> knots{{Rational(0), Rational(0)}};
  Rational acc = 0;
  for (unsigned i = 0; i < grid; ++i) {
    acc += steps[i];
    knots.emplace_back(fraction(i + 1, grid), i + 1 == grid ? Rational(1) : Rational(acc / total));
  }
  return WeightingSpec::tabulated(std::move(knots));
}

std::optional<int> predicted_direction(const WeightingSpec& w, unsigned m) {
  if (!w.as_polynomial()) return std::nullopt;
  const int d = direction_from(analytic_derivative_sign(w, m).kind, m);
  if (d == 2) return std::nullopt;
  return d;
}

std::vector<WeightingSpec> signed_polynomial_family(unsigned m, bool right) {
  std::vector<WeightingSpec> candidates;
  for (unsigned j = m; j <= m + 3; ++j) candidates.push_back(WeightingSpec::dual_power(j));
  for (unsigned k = m; k <= m + 2; ++k) candidates.push_back(WeightingSpec::power(k));
  for (unsigned b = 1; b <= m; ++b) candidates.push_back(WeightingSpec::beta_cdf(m + 1 - b, b));
  std::vector<WeightingSpec> out;
  const int want = right ? 1 : -1;
  for (auto& w : candidates)
    if (predicted_direction(w, m) == want) out.push_back(std::move(w));
  return out;
}

WeightingSpec random_signed_weighting(std::mt19937_64& rng, unsigned m, bool right) {
  const std::vector<WeightingSpec> family = signed_polynomial_family(m, right);
  const long count = std::min<long>(uniform(rng, 2, 3), static_cast<long>(family.size()));
  Polynomial h;
  Rational total = 0;
  std::vector<std::pair<Rational, Polynomial>> parts;
  for (long i = 0; i < count; ++i) {
    const auto& w = family[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(family.size()) - 1))];
    Rational weight(uniform(rng, 1, 9));
    parts.emplace_back(weight, *w.as_polynomial());
    total += weight;
  }
  for (const auto& [weight, p] : parts) h = h + Rational(weight / total) * p;
  return WeightingSpec::polynomial(h);
}

ConverseResult converse_search(const WeightingSpec& w, unsigned m, unsigned grid) {
  ConverseResult out;
  out.certificate = finite_difference_sign(w, m, grid);
  const int parity = (m - 1) % 2 == 0 ? 1 : -1;
  const Rational K = 2 * binomial(m - 1, (m - 1) / 2) + 1;

  auto try_witness = [&](const SignWitness& wit, int witness_sign) -> std::optional<ApportionmentPair> {
    const int want = witness_sign * parity;
    const Rational a_r = wit.start * grid, b_r = wit.step * grid;
    const unsigned long a = a_r.get_num().get_ui(), b = b_r.get_num().get_ui();
    std::vector<std::pair<unsigned long, unsigned long>> candidates;  // (n, j)
    if (grid % b == 0 && a % b == 0) candidates.emplace_back(grid / b, a / b);
    for (unsigned long j = a; j <= a + m * (b - 1); ++j) candidates.emplace_back(grid, j);
    for (const auto& [n, j] : candidates) {
      if (j + m > n) continue;
      std::vector<Rational> xs;
      for (unsigned long i = 0; i < n; ++i) xs.push_back(K * static_cast<long>(i + 1));
      ApportionmentPair pair = make_parsimonious_pair(EqualProbLottery::make(std::move(xs)), j, m, Rational(1));
      if (preference_direction(pair, w).sign == want) return pair;
    }
    return std::nullopt;
  };

  if (out.certificate.positive) {
    auto pair = try_witness(*out.certificate.positive, 1);
    if (pair) (parity > 0 ? out.d_preferred : out.c_preferred) = std::move(pair);
  }
  if (out.certificate.negative) {
    auto pair = try_witness(*out.certificate.negative, -1);
    if (pair) (parity > 0 ? out.c_preferred : out.d_preferred) = std::move(pair);
  }
  return out;
}

std::string VerifyReport::summary() const {
  return "theorem " + std::to_string(theorem) + " (order " + std::to_string(order) + "): " + std::to_string(trials) +
         " trials, " + std::to_string(checks) + " checks, " + std::to_string(vacuous) + " vacuous, " +
         std::to_string(failures.size()) + " failures: " + (passed() ? "PASS" : "FAIL");
}

VerifyReport verify_theorem(const VerifyOptions& options) {
  if (options.theorem < 1 || options.theorem > 6) throw Error(ErrorCode::DomainError, "theorem must be 1..6");
  VerifyReport report;
  report.theorem = options.theorem;
  report.trials = options.trials;
  const unsigned t = options.theorem;
  report.order = t <= 2 ? 3 : t <= 4 ? 4 : options.order.value_or(5);
  const unsigned m = report.order;
  if (m < 2) throw Error(ErrorCode::DomainError, "order must be >= 2");
  std::mt19937_64 master(options.seed);

  if (t % 2 == 1) {
    std::vector<WeightingSpec> family;
    if (options.weighting) {
      family.push_back(*options.weighting);
    } else {
      family = signed_polynomial_family(m, true);
      for (auto& w : signed_polynomial_family(m, false)) family.push_back(std::move(w));
    }
    std::vector<std::optional<int>> expected;
    for (const auto& w : family) {
      std::optional<int> d = predicted_direction(w, m);
      if (!d && !w.as_polynomial()) {
        const int from_grid = direction_from(finite_difference_sign(w, m).kind, m);
        if (from_grid != 2) d = from_grid;
      }
      expected.push_back(d);
    }
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const std::uint64_t trial_seed = master();
      try {
        const ApportionmentPair pair = random_general_pair(trial_seed, m);
        ++report.checks;
        const DominanceReport dom = dual_sd_check(pair.c_lottery(), pair.d_lottery(), m);
        if (!dom.holds) {
          report.failures.push_back("dual dominance fails (" + dom.failed_condition.value_or("?") + ")\n" +
                                    pair_record(pair));
          continue;
        }
        bool any = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
          if (!expected[i]) continue;
          any = true;
          ++report.checks;
          const Preference pref = preference_direction(pair, family[i]);
          const int want = *expected[i];
          const bool ok = want == 0 ? pref.sign == 0 : pref.sign * want >= 0;
          if (!ok)
            report.failures.push_back("weighting=" + family[i].to_string() + " premium=" + pref.premium.to_string() +
                                      " expected sign " + std::to_string(want) + "\n" + pair_record(pair));
        }
        if (!any) ++report.vacuous;
      } catch (const std::exception& e) {
        report.failures.push_back("seed=" + std::to_string(trial_seed) + " error: " + e.what());
      }
    }
    return report;
  }

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::optional<WeightingSpec> w = options.weighting;
    std::optional<ConverseResult> result;
    if (w) {
      result = converse_search(*w, m, options.grid);
    } else {
      std::mt19937_64 rng(master());
      for (int attempt = 0; attempt < 100; ++attempt) {
        w = random_tabulated(rng, options.grid);
        result = converse_search(*w, m, options.grid);
        if (result->certificate.kind == SignKind::Mixed) break;
      }
    }
    if (result->certificate.kind != SignKind::Mixed) {
      ++report.vacuous;
      continue;
    }
    ++report.checks;
    if (!result->success())
      report.failures.push_back("weighting=" + w->to_string() + " order=" + std::to_string(m) + " missing " +
                                (result->d_preferred ? "C-preferred" : "D-preferred") + " pair");
  }
  return report;
}

}  // namespace dualrisk
