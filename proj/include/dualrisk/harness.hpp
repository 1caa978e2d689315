#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dualrisk/apportionment.hpp"
#include "dualrisk/weighting.hpp"

namespace dualrisk {

/// Random general pair of order m (m >= 2): random base with gaps of at least
/// 1/2 between states, block sizes small enough that ranks survive, random
/// shifts in 1..3 and random positions obeying the anchoring constraints.
/// `states` fixes the base size (DomainError if the blocks cannot fit).
ApportionmentPair random_general_pair(std::uint64_t seed, unsigned m, std::optional<std::size_t> states = std::nullopt);

/// Random piecewise-linear h with knots at i/grid and random positive
/// rational increments (denominators up to 12).
WeightingSpec random_tabulated(std::mt19937_64& rng, unsigned grid);

/// Polynomial weighting functions whose m-th derivative has constant sign on
/// (0, 1): `right` gives (-1)^(m-1) h^(m) >= 0, otherwise the flipped sign.
/// Drawn from DualPower(j), integer Power(k) and regularized incomplete betas.
std::vector<WeightingSpec> signed_polynomial_family(unsigned m, bool right);

/// Random convex combination of two or three members of the family above.
WeightingSpec random_signed_weighting(std::mt19937_64& rng, unsigned m, bool right);

/// +1 when (-1)^(m-1) h^(m) >= 0 on (0,1) (D preferred), -1 for the flipped
/// sign, 0 when h^(m) vanishes, nullopt when mixed or not polynomial.
std::optional<int> predicted_direction(const WeightingSpec& w, unsigned m);

struct ConverseResult {
  SignCertificate certificate;
  std::optional<ApportionmentPair> d_preferred;  // V[D] > V[C]
  std::optional<ApportionmentPair> c_preferred;  // V[D] < V[C]
  bool success() const { return d_preferred.has_value() && c_preferred.has_value(); }
};

/// Maps the grid witnesses of finite_difference_sign(w, m, grid) to
/// parsimonious pairs of order m and confirms each preference sign exactly.
/// Meaningful when the certificate is Mixed.
ConverseResult converse_search(const WeightingSpec& w, unsigned m, unsigned grid);

struct VerifyOptions {
  unsigned theorem = 1;                   // 1..6
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::optional<unsigned> order;          // theorems 5 and 6; default 5
  std::optional<WeightingSpec> weighting; // fixed h instead of the random family
  unsigned grid = 12;                     // knot grid of random tabulated h (converse)
};

struct VerifyReport {
  unsigned theorem = 0;
  unsigned order = 0;
  std::size_t trials = 0;
  std::size_t checks = 0;    // individual sign assertions made
  std::size_t vacuous = 0;   // trials with nothing to assert
  std::vector<std::string> failures;  // replay records

  bool passed() const { return failures.empty(); }
  std::string summary() const;
};

/// Odd theorems: random general pairs (equal dual moments 1..m-1, D
/// dual-dominates C) against signed polynomial weightings. Even theorems:
/// random tabulated h (or the fixed one) through converse_search.
VerifyReport verify_theorem(const VerifyOptions& options);

}  // namespace dualrisk
