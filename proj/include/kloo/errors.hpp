#pragma once

#include <stdexcept>
#include <string>

namespace kloo {

/// Operand outside the mathematical domain of an operation (zero inverse, a = 0, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Invalid or mismatched parameters: out-of-range r, mixed fields, parity violations.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A stated hypothesis of an identity does not hold for the given input.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Brute-force enumeration would exceed its hard budget.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exactness guarantee failed (non-divisible quotient, disagreeing routes).
/// Always a bug or a wrong formula, never a rounding artefact.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace kloo
