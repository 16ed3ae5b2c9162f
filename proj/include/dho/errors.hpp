#pragma once

#include <stdexcept>
#include <string>

namespace dho {

/// Raised when user-supplied parameters violate a model constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed quantity fails an internal consistency check,
/// e.g. a nonzero imaginary residue left over from a complex matrix product.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dho
