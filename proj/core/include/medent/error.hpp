#pragma once

#include <stdexcept>
#include <string>

namespace medent {

/// Invalid input: malformed parameters, out-of-domain arguments, broken invariants.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not meet its contract (no bracket, no
/// convergence, tolerance unattainable within the subdivision cap).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace medent
