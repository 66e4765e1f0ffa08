#pragma once

#include <stdexcept>

namespace protoselect {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejected inputs: bad values, dimension mismatches, invalid parameters.
struct InvalidInputError : Error {
  using Error::Error;
};

// Optimization failures: infeasible/unbounded LPs, iteration caps,
// rounding retry caps.
struct SolverError : Error {
  using Error::Error;
};

// Command-line usage problems: contradictory flags, malformed option values.
struct ConfigError : Error {
  using Error::Error;
};

// Problems with user-supplied files: unreadable paths, malformed CSV or
// JSON, values that cannot be parsed.
struct DataError : Error {
  using Error::Error;
};

}  // namespace protoselect
