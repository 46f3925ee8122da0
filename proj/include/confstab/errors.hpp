#pragma once

#include <stdexcept>
#include <string>

namespace confstab {

/// Bad input to an operation (precondition violated by the caller).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An object is in a state the operation cannot handle (e.g. unnormalized loops).
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured resource ceiling (cell count, matrix size) would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A character decomposition produced a non-integral or negative multiplicity.
class CorruptedCharacter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-width arithmetic overflowed; callers retry with arbitrary precision.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace confstab
