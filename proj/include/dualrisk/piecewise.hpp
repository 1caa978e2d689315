#pragma once

#include <optional>
#include <vector>

#include "dualrisk/lottery.hpp"
#include "dualrisk/polynomial.hpp"

namespace dualrisk {

/// Piecewise polynomial on [breaks.front(), breaks.back()]. Piece i lives on
/// [breaks[i], breaks[i+1]] and is written in the global variable t.
///
/// Step functions (degree 0) are ambiguous at interior breakpoints; `eval`
/// picks the piece on the left unless `right_continuous` is set.
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<Rational> breaks, std::vector<Polynomial> pieces, bool right_continuous = false);

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  bool right_continuous() const { return right_continuous_; }

  Rational eval(const Rational& t) const;
  double eval(double t) const;

  /// Continuous antiderivative vanishing at breaks.front().
  PiecewisePoly integral() const;

  /// Same function on a finer breakpoint set (must contain breaks()).
  PiecewisePoly refined(const std::vector<Rational>& breaks) const;

  /// Piecewise a - b over the union of both breakpoint sets; domains must agree.
  friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);

 private:
  std::size_t piece_index(const Rational& t) const;
  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_;
  bool right_continuous_;
};

/// A point where `f` is strictly negative on its domain, decided exactly:
/// first breakpoint values, then a Sturm-based scan of every piece.
std::optional<Rational> find_negative(const PiecewisePoly& f);

/// ^mF^{-1}: the quantile function integrated m-1 times from 0, on [0, 1].
PiecewisePoly iterated_quantile(const Lottery& lottery, unsigned m);

/// F^(m): the CDF integrated m-1 times from 0, on [0, upper].
/// `upper` must be at least the largest outcome.
PiecewisePoly iterated_cdf(const Lottery& lottery, unsigned m, const Rational& upper);

}  // namespace dualrisk
