#include "lsched/mathkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lsched/errors.hpp"

namespace lsched::mathkit {
namespace {

constexpr int kMaxHalleyIterations = 50;
constexpr double kResidualFactor = 1e-12;

double initial_guess(double x, double from_branch) {
  // Series about the branch point in p = sqrt(2 (e x + 1)).
  if (from_branch < 0.05) {
    const double p = std::sqrt(2.0 * kE * from_branch);
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 3.0) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

LambertWResult lambert_w0(double x) {
  if (std::isnan(x)) {
    throw DomainError("lambert_w0: NaN argument");
  }
  const double from_branch = x + kInvE;
  if (from_branch < -kBranchSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambert_w0: argument " << x << " is below -1/e";
    throw DomainError(msg.str());
  }
  if (from_branch <= 0.0) {
    return {-1.0, 0, std::abs(-kInvE - x)};
  }
  if (x == 0.0) {
    return {0.0, 0, 0.0};
  }
  if (std::isinf(x)) {
    return {std::numeric_limits<double>::infinity(), 0, 0.0};
  }

  double w = initial_guess(x, from_branch);
  int iterations = 0;
  while (iterations < kMaxHalleyIterations) {
    ++iterations;
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
      break;
    }
  }
  // Newton never leaves the principal branch once there; clamp round-off.
  if (w < -1.0) w = -1.0;

  const double residual = std::abs(w * std::exp(w) - x);
  if (std::isfinite(residual) &&
      residual > kResidualFactor * std::max(1.0, std::abs(x))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambert_w0: no convergence at x=" << x << " (residual " << residual << ")";
    throw std::logic_error(msg.str());
  }
  return {w, iterations, residual};
}

double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol, double value_tol) {
  if (!(hi > lo)) {
    throw InvalidBracketError("solve_monotone_root: hi must exceed lo");
  }
  if (f(lo) <= 0.0) {
    return lo;
  }
  double f_hi = f(hi);
  while (hi - lo > tol) {
    if (f_hi <= 0.0 && f_hi >= -value_tol) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return hi;
}

}  // namespace lsched::mathkit
