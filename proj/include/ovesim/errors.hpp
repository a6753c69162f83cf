#pragma once

#include <stdexcept>
#include <string>

namespace ovesim {

/// Argument outside its mathematical domain (overlap not in [0,1],
/// dimension mismatch, unknown strategy tag, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A run or campaign is misconfigured: divisibility constraints, budgets,
/// parameter ranges, unsupported parameter combinations.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact enumeration would exceed the supported instance size.
struct EnumerationBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two variance curves do not cross on (0,1).
struct NoCrossoverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Config or report text could not be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Least-squares fit is singular or under-determined.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ovesim
