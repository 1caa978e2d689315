#include "dualrisk/apportionment.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "dualrisk/error.hpp"
#include "dualrisk/valuation.hpp"

namespace dualrisk {

namespace {

void check_order(const std::vector<Rational>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0)
      throw Error(ErrorCode::NegativeOutcome,
                  std::string(what) + " makes state " + std::to_string(i + 1) + " negative (" + to_string(xs[i]) + ")");
    if (i > 0 && xs[i] < xs[i - 1])
      throw Error(ErrorCode::RankViolation, std::string(what) + " puts state " + std::to_string(i + 1) + " (" +
                                                to_string(xs[i]) + ") below state " + std::to_string(i) + " (" +
                                                to_string(xs[i - 1]) + ")");
  }
}

EqualProbLottery shift_pair(const EqualProbLottery& lottery, std::size_t i, std::size_t j, const Rational& x,
                            const char* what) {
  if (i >= j || j >= lottery.size())
    throw Error(ErrorCode::DomainError, std::string(what) + " needs states i < j inside the lottery");
  std::vector<Rational> xs = lottery.outcomes();
  xs[i] += x;
  xs[j] -= x;
  check_order(xs, what);
  return EqualProbLottery::make(std::move(xs));
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

void add_block(std::vector<Rational>& xs, const Block& block, std::size_t pos) {
  if (block.n != 0 && block.n != xs.size())
    throw Error(ErrorCode::DomainError, "block built for " + std::to_string(block.n) + " states applied to " +
                                            std::to_string(xs.size()));
  if (pos + block.span() > xs.size())
    throw Error(ErrorCode::DomainError, "block at state " + std::to_string(pos + 1) + " runs past the last state");
  for (const auto& e : block.entries) xs[pos + e.offset] += e.increment;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Rational r = parse_rational(item);
    if (r.get_den() != 1 || r < 0) throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + item + "'");
    out.push_back(r.get_num().get_ui());
  }
  return out;
}

EqualProbLottery parse_grid(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorCode::ParseError, "expected '[x1;x2;...]', got '" + text + "'");
  std::vector<Rational> xs;
  std::stringstream in(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(in, item, ';')) xs.push_back(parse_rational(item));
  return EqualProbLottery::make(std::move(xs));
}

void validate_pair(const ApportionmentPair& pair) {
  const Lottery c = pair.c_lottery(), d = pair.d_lottery();
  if (mean(c) != mean(d)) throw std::logic_error("apportionment pair does not preserve the mean");
  for (unsigned k = 1; k < pair.order; ++k)
    if (dual_moment(c, k) != dual_moment(d, k))
      throw std::logic_error("apportionment pair differs in dual moment " + std::to_string(k));
}

}  // namespace

EqualProbLottery squeeze(const EqualProbLottery& lottery, std::size_t i, std::size_t j, const Rational& x) {
  if (x < 0) throw Error(ErrorCode::DomainError, "squeeze amount must be >= 0");
  return shift_pair(lottery, i, j, x, "squeeze");
}

EqualProbLottery anti_squeeze(const EqualProbLottery& lottery, std::size_t i, std::size_t j, const Rational& x) {
  if (x < 0) throw Error(ErrorCode::DomainError, "anti-squeeze amount must be >= 0");
  return shift_pair(lottery, i, j, Rational(-x), "anti-squeeze");
}

Rational Block::sum() const {
  Rational acc = 0;
  for (const auto& e : entries) acc += e.increment;
  return acc;
}

Block Block::negated() const {
  Block out = *this;
  for (auto& e : out.entries) e.increment = -e.increment;
  out.polarity = polarity == Polarity::Good ? Polarity::Bad : Polarity::Good;
  return out;
}

GapSpec GapSpec::minimal(unsigned m) { return GapSpec{std::vector<std::size_t>(m > 2 ? m - 2 : 0, 1)}; }

std::string GapSpec::to_string() const { return join(shifts); }

GapSpec parse_gaps(std::string_view text) { return GapSpec{parse_indices(std::string(text))}; }

BlockPair make_blocks(unsigned m, std::size_t n, const Rational& delta, const GapSpec& gaps) {
  if (m < 2) throw Error(ErrorCode::BadGapSpec, "blocks need order m >= 2");
  if (delta <= 0) throw Error(ErrorCode::DomainError, "block size delta must be positive");
  if (gaps.shifts.size() != m - 2)
    throw Error(ErrorCode::BadGapSpec, "order " + std::to_string(m) + " needs " + std::to_string(m - 2) +
                                           " shifts, got " + std::to_string(gaps.shifts.size()));
  std::map<std::size_t, Rational> g{{0, delta}};
  for (unsigned k = 3; k <= m; ++k) {
    const std::size_t t = gaps.shifts[k - 3];
    if (t == 0) throw Error(ErrorCode::BadGapSpec, "G must precede B by at least one state at every level");
    std::map<std::size_t, Rational> next = g;
    for (const auto& [off, inc] : g) next[off + t] -= inc;
    g.clear();
    for (auto& [off, inc] : next)
      if (inc != 0) g.emplace(off, std::move(inc));
  }
  Block good;
  good.n = n;
  good.order = m;
  good.polarity = Polarity::Good;
  for (auto& [off, inc] : g) good.entries.push_back({off, inc});
  if (n != 0 && good.span() > n)
    throw Error(ErrorCode::BadGapSpec, "blocks span " + std::to_string(good.span()) + " states but n = " +
                                           std::to_string(n));
  return {good, good.negated()};
}

EqualProbLottery attach(const EqualProbLottery& lottery, const Block& first, const Block& second,
                        std::size_t pos_first, std::size_t pos_second) {
  if (pos_first >= pos_second)
    throw Error(ErrorCode::PrecedenceViolation, "first block must start at least one state before the second");
  std::vector<Rational> xs = lottery.outcomes();
  add_block(xs, first, pos_first);
  add_block(xs, second, pos_second);
  check_order(xs, "attaching");
  return EqualProbLottery::make(std::move(xs));
}

ApportionmentPair make_pair(const EqualProbLottery& base, unsigned m, const GeneralPairSpec& spec) {
  if (spec.good.order != m || spec.bad.order != m)
    throw Error(ErrorCode::BadGapSpec, "blocks must have order " + std::to_string(m));
  if (spec.good.polarity != Polarity::Good || spec.bad.polarity != Polarity::Bad)
    throw Error(ErrorCode::BadGapSpec, "expected a good and a bad block");
  if (spec.d_good > spec.c_good || spec.c_bad > spec.d_bad)
    throw Error(ErrorCode::PrecedenceViolation,
                "the good block must not start later in D than in C, nor the bad block earlier");
  ApportionmentPair pair{attach(base, spec.bad, spec.good, spec.c_bad, spec.c_good),
                         attach(base, spec.good, spec.bad, spec.d_good, spec.d_bad), m, Provenance{}};
  pair.provenance.base = base;
  pair.provenance.order = m;
  pair.provenance.d_good = spec.d_good;
  pair.provenance.d_bad = spec.d_bad;
  pair.provenance.c_bad = spec.c_bad;
  pair.provenance.c_good = spec.c_good;
  validate_pair(pair);
  return pair;
}

ApportionmentPair make_general_pair(const EqualProbLottery& base, unsigned m, const Rational& delta_good,
                                    const GapSpec& gaps_good, const Rational& delta_bad, const GapSpec& gaps_bad,
                                    std::size_t d_good, std::size_t d_bad, std::size_t c_bad, std::size_t c_good) {
  const std::size_t n = base.size();
  GeneralPairSpec spec{make_blocks(m, n, delta_good, gaps_good).good, make_blocks(m, n, delta_bad, gaps_bad).bad,
                       d_good, d_bad, c_bad, c_good};
  ApportionmentPair pair = make_pair(base, m, spec);
  pair.provenance.delta_good = delta_good;
  pair.provenance.delta_bad = delta_bad;
  pair.provenance.gaps_good = gaps_good;
  pair.provenance.gaps_bad = gaps_bad;
  return pair;
}

ApportionmentPair make_parsimonious_pair(const EqualProbLottery& base, std::size_t j, unsigned m, const Rational& M) {
  const std::size_t n = base.size();
  if (m < 2) throw Error(ErrorCode::DomainError, "order must be >= 2");
  if (n < m) throw Error(ErrorCode::DomainError, "need n >= m states");
  if (j + m > n)
    throw Error(ErrorCode::DomainError, "the " + std::to_string(m) + " bold states do not fit after state " +
                                            std::to_string(j));
  if (M <= 0) throw Error(ErrorCode::DomainError, "M must be positive");

  const BlockPair blocks = make_blocks(m, n, Rational(1 / M), GapSpec::minimal(m));
  ApportionmentPair pair{base, attach(base, blocks.good, blocks.bad, j, j + 1), m, Provenance{}};
  pair.provenance.kind = Provenance::Kind::Parsimonious;
  pair.provenance.base = base;
  pair.provenance.order = m;
  pair.provenance.position = j;
  pair.provenance.M = M;

  const std::vector<Rational> inc = increments(pair);
  for (std::size_t i = 0; i < n; ++i) {
    Rational expected = 0;
    if (i >= j && i < j + m) {
      const unsigned k = static_cast<unsigned>(i - j);
      expected = binomial(m - 1, k) / M;
      if (k % 2) expected = -expected;
    }
    if (inc[i] != expected)
      throw std::logic_error("parsimonious increments differ from the alternating binomial pattern at state " +
                             std::to_string(i + 1));
  }
  validate_pair(pair);
  return pair;
}

std::vector<Rational> increments(const ApportionmentPair& pair) {
  std::vector<Rational> out(pair.C.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pair.D[i] - pair.C[i];
  return out;
}

ApportionmentPair replay(const Provenance& p) {
  ApportionmentPair pair =
      p.kind == Provenance::Kind::Parsimonious
          ? make_parsimonious_pair(p.base, p.position, p.order, p.M)
          : make_general_pair(p.base, p.order, p.delta_good, p.gaps_good, p.delta_bad, p.gaps_bad, p.d_good, p.d_bad,
                              p.c_bad, p.c_good);
  pair.provenance.seed = p.seed;
  return pair;
}

std::string to_string(const Provenance& p) {
  std::ostringstream out;
  if (p.kind == Provenance::Kind::Parsimonious) {
    out << "kind=parsimonious\n"
        << "order=" << p.order << "\n"
        << "base=" << to_string(p.base) << "\n"
        << "position=" << p.position << "\n"
        << "M=" << to_string(p.M) << "\n";
  } else {
    out << "kind=general\n"
        << "order=" << p.order << "\n"
        << "base=" << to_string(p.base) << "\n"
        << "delta_good=" << to_string(p.delta_good) << "\n"
        << "gaps_good=" << p.gaps_good.to_string() << "\n"
        << "delta_bad=" << to_string(p.delta_bad) << "\n"
        << "gaps_bad=" << p.gaps_bad.to_string() << "\n"
        << "d_positions=" << p.d_good << "," << p.d_bad << "\n"
        << "c_positions=" << p.c_bad << "," << p.c_good << "\n";
  }
  if (p.seed) out << "seed=" << *p.seed << "\n";
  return out.str();
}

Provenance parse_provenance(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "provenance line without '=': " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::ParseError, "provenance lacks '" + key + "'");
    return it->second;
  };
  auto pair_of = [&](const std::string& key) {
    auto v = parse_indices(get(key));
    if (v.size() != 2) throw Error(ErrorCode::ParseError, "'" + key + "' needs two positions");
    return v;
  };

  Provenance p;
  const std::string& kind = get("kind");
  Rational order = parse_rational(get("order"));
  if (order.get_den() != 1 || order < 2) throw Error(ErrorCode::ParseError, "order must be an integer >= 2");
  p.order = static_cast<unsigned>(order.get_num().get_ui());
  p.base = parse_grid(get("base"));
  if (kind == "parsimonious") {
    p.kind = Provenance::Kind::Parsimonious;
    p.position = parse_indices(get("position")).at(0);
    p.M = parse_rational(get("M"));
  } else if (kind == "general") {
    p.kind = Provenance::Kind::General;
    p.delta_good = parse_rational(get("delta_good"));
    p.delta_bad = parse_rational(get("delta_bad"));
    p.gaps_good = parse_gaps(get("gaps_good"));
    p.gaps_bad = parse_gaps(get("gaps_bad"));
    auto d = pair_of("d_positions");
    auto c = pair_of("c_positions");
    p.d_good = d[0];
    p.d_bad = d[1];
    p.c_bad = c[0];
    p.c_good = c[1];
  } else {
    throw Error(ErrorCode::ParseError, "unknown provenance kind '" + kind + "'");
  }
  if (auto it = kv.find("seed"); it != kv.end()) p.seed = std::stoull(it->second);
  return p;
}

Preference preference_direction(const ApportionmentPair& pair, const WeightingSpec& w) {
  Number premium = dt_value(pair.d_lottery(), w) - dt_value(pair.c_lottery(), w);
  return {premium.sign(), premium};
}

}  // namespace dualrisk
