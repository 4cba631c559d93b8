#pragma once

#include <stdexcept>
#include <string>

namespace lieham {

/// Operand dimensions disagree (polynomial variables vs algebra, point vs space, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field or system was evaluated outside its domain predicate.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Division by zero, non-integer power of a negative base, or a non-finite result.
class SingularOperation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejection sampling could not find an in-domain point.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieham
