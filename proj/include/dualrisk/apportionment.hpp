#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualrisk/lottery.hpp"
#include "dualrisk/weighting.hpp"

namespace dualrisk {

/// Moves states i < j of `lottery` toward each other by x >= 0.
/// Throws RankViolation if the order of outcomes would change, NegativeOutcome.
EqualProbLottery squeeze(const EqualProbLottery& lottery, std::size_t i, std::size_t j, const Rational& x);
/// Moves states i < j apart by x >= 0.
EqualProbLottery anti_squeeze(const EqualProbLottery& lottery, std::size_t i, std::size_t j, const Rational& x);

enum class Polarity { Good, Bad };

struct BlockEntry {
  std::size_t offset;
  Rational increment;

  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

/// Per-state increment vector G^(m) or B^(m) acting on an n-state grid.
struct Block {
  std::vector<BlockEntry> entries;  // strictly increasing offsets, non-zero increments
  std::size_t n = 0;
  unsigned order = 0;
  Polarity polarity = Polarity::Good;

  /// Last offset + 1.
  std::size_t span() const { return entries.empty() ? 0 : entries.back().offset + 1; }
  Rational sum() const;
  Block negated() const;
};

/// Start-offset shifts used at each recursion step m = 3, 4, ...: G^(k) is
/// G^(k-1) followed by -G^(k-1) starting `shifts[k-3]` states later. Every
/// shift must be >= 1 (strict one-state precedence); overlapping entries add.
struct GapSpec {
  std::vector<std::size_t> shifts;

  /// All shifts equal to one: the tightest overlap.
  static GapSpec minimal(unsigned m);
  std::string to_string() const;
};
GapSpec parse_gaps(std::string_view text);

struct BlockPair {
  Block good;
  Block bad;
};

/// G^(2) = [+delta], B^(2) = [-delta], then the concatenation recursion.
/// Throws BadGapSpec unless gaps has m - 2 shifts, all >= 1.
BlockPair make_blocks(unsigned m, std::size_t n, const Rational& delta, const GapSpec& gaps);

/// Adds `first` at `pos_first` and `second` at `pos_second` state-wise.
/// Throws PrecedenceViolation unless pos_first < pos_second, DomainError if a
/// block runs past the last state, RankViolation or NegativeOutcome.
EqualProbLottery attach(const EqualProbLottery& lottery, const Block& first, const Block& second,
                        std::size_t pos_first, std::size_t pos_second);

/// Enough to rebuild a pair bit-exactly.
struct Provenance {
  enum class Kind { General, Parsimonious };
  Kind kind = Kind::General;
  EqualProbLottery base = EqualProbLottery::make({Rational(0)});
  unsigned order = 0;
  // General pairs.
  Rational delta_good = 0;
  Rational delta_bad = 0;
  GapSpec gaps_good;
  GapSpec gaps_bad;
  std::size_t d_good = 0, d_bad = 0;  // positions in D: good first
  std::size_t c_bad = 0, c_good = 0;  // positions in C: bad first
  // Parsimonious pairs.
  std::size_t position = 0;  // states before the bold block
  Rational M = 0;
  std::optional<std::uint64_t> seed;
};

std::string to_string(const Provenance& p);
/// Inverse of to_string; throws ParseError.
Provenance parse_provenance(std::string_view text);

struct ApportionmentPair {
  EqualProbLottery C;
  EqualProbLottery D;
  unsigned order;
  Provenance provenance;

  Lottery c_lottery() const { return C.to_lottery(); }
  Lottery d_lottery() const { return D.to_lottery(); }
};

struct GeneralPairSpec {
  Block good;  // G^(m)
  Block bad;   // B^(m); may use its own delta and gaps
  std::size_t d_good, d_bad;  // D: good attached before bad
  std::size_t c_bad, c_good;  // C: bad attached before good
};

/// D = base + G@d_good + B@d_bad and C = base + B@c_bad + G@c_good.
/// Requires d_good <= c_good and c_bad <= d_bad so the good block sits no
/// later in D than in C, and the bad block no earlier. Dual moments
/// 1..m-1 and means of C and D are checked; a mismatch is a construction bug
/// and throws std::logic_error.
ApportionmentPair make_pair(const EqualProbLottery& base, unsigned m, const GeneralPairSpec& spec);

/// Builds G^(m), B^(m) with delta = `delta`, gaps from `gaps_good` /
/// `gaps_bad`, and calls make_pair; fills in provenance.
ApportionmentPair make_general_pair(const EqualProbLottery& base, unsigned m, const Rational& delta_good,
                                    const GapSpec& gaps_good, const Rational& delta_bad, const GapSpec& gaps_bad,
                                    std::size_t d_good, std::size_t d_bad, std::size_t c_bad, std::size_t c_good);

/// C = base; D = base + G^(m)@j + B^(m)@(j+1) with delta = 1/M and all
/// shifts one. The net increments are checked against
/// (1/M) (-1)^(k-1) C(m-1, k-1), k = 1..m.
ApportionmentPair make_parsimonious_pair(const EqualProbLottery& base, std::size_t j, unsigned m, const Rational& M);

/// D - C state by state.
std::vector<Rational> increments(const ApportionmentPair& pair);

/// Rebuilds a pair from its provenance.
ApportionmentPair replay(const Provenance& p);

struct Preference {
  int sign;        // sign of V[D] - V[C]
  Number premium;  // V[D] - V[C]
};
Preference preference_direction(const ApportionmentPair& pair, const WeightingSpec& w);

}  // namespace dualrisk
