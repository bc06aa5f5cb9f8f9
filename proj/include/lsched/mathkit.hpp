#pragma once

#include <functional>

namespace lsched::mathkit {

inline constexpr double kE = 2.718281828459045235360287;
inline constexpr double kInvE = 0.367879441171442321595523770161;

/// Slack below -1/e that is still mapped onto the branch point.
inline constexpr double kBranchSlack = 1e-15;

struct LambertWResult {
  double value = 0.0;
  int iterations = 0;
  /// |value * exp(value) - x| at return.
  double residual = 0.0;
};

/// Principal branch W0 of the Lambert W function, x >= -1/e.
///
/// Halley iteration from a branch-point series, Taylor, or asymptotic seed
/// depending on the region. At most 50 iterations; the residual is checked on
/// exit against 1e-12 * max(1, |x|).
///
/// Throws DomainError for x < -1/e - kBranchSlack or NaN.
LambertWResult lambert_w0(double x);

/// Bisection for a decreasing f on [lo, hi] with f(lo) > 0 >= f(hi).
///
/// Returns the upper end of the final bracket, so f(result) <= 0 whenever
/// f(hi) <= 0 initially. Stops when hi - lo <= tol, when
/// -value_tol <= f(hi) <= 0, or when the bracket can no longer be split.
/// If f(lo) <= 0 the boundary lo is returned.
///
/// Throws InvalidBracketError if hi <= lo.
double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol, double value_tol = 0.0);

}  // namespace lsched::mathkit
