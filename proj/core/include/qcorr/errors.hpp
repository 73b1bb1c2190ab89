#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Raised when operand shapes do not line up (multiply, partial trace, channel on wrong dim, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value violates a domain invariant (non-Hermitian, not PSD, not trace preserving, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by find_witness when no basis violates the commutator condition.
class WitnessNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
