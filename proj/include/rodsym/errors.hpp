#pragma once

#include <stdexcept>
#include <string>

namespace rodsym {

// Argument lies outside the domain of a function or operator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or out-of-range parameter (tolerance, grid size, exponent, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a mathematical precondition of the operation (e.g. f >= 0).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Neumann data without zero mean.
class CompatibilityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A postcondition audit failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rodsym
