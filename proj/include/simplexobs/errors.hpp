#pragma once

#include <stdexcept>
#include <string>

namespace simplexobs {

// Requested size exceeds what enumeration can handle (n! growth).
class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands disagree on n, row count or column count.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed argument (non-prime modulus, invalid permutation, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sampled path too coarse to lift the phase unambiguously.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Path endpoints do not match when concatenating.
class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a mathematical precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace simplexobs
