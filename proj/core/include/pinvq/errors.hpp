#pragma once

#include <stdexcept>
#include <string>

namespace pinvq {

/// Operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (matrix, vector, rational, trace or transcript).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition does not hold: zero matrix where a nonzero one is
/// required, an out-of-range certificate, a missing nonzero witness.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact elimination met a singular matrix where an inverse was requested.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace pinvq
