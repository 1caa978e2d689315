#pragma once

#include <functional>
#include <vector>

namespace dualrisk {

struct ScalarMax {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [a, b]; stops when
/// the bracket is narrower than `tol`.
ScalarMax golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

struct GridScan {
  std::vector<double> xs;
  std::vector<double> values;
  std::size_t best;  // index of the largest value (first on ties)
};

/// Evaluates f at `intervals + 1` equally spaced points of [lo, hi].
GridScan grid_scan(const std::function<double(double)>& f, double lo, double hi, std::size_t intervals = 256);

/// Largest discrete second difference of a grid scan, scaled by the value
/// range; <= 0 (up to rounding) on a concave function.
double max_second_difference(const GridScan& scan);

/// Root of g in [a, b] by bisection, given g(a) and g(b) of opposite sign.
double bisect_root(const std::function<double(double)>& g, double a, double b, double tol = 1e-14);

}  // namespace dualrisk
