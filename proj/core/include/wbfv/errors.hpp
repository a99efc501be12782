#pragma once

#include <stdexcept>
#include <string>

namespace wbfv {

// Invalid sizes, domains, option combinations, malformed inputs.
struct ConstructionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Non-physical state encountered (negative density/pressure, NaN), with location.
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query outside the covered range of tabulated/discrete data.
struct CoverageError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// File parsing / writing problems.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace wbfv
