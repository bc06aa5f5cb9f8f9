#pragma once

#include <stdexcept>
#include <string>

namespace lsched {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root-finder bracket with hi <= lo.
class InvalidBracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A transmission was requested over a link whose rate is zero.
class InfeasibleRateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Problem size exceeds what an exponential algorithm is allowed to attempt.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed configuration text or an invalid parameter combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsched
