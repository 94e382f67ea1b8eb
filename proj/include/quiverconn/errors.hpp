#pragma once

#include <stdexcept>
#include <string>

namespace qc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or a domain invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Reflection at a node whose parameter vanishes.
class ReflectionUndefined : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Malformed spec files and scalar literals.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Combinatorial search exceeded its configured state budget.
class ResourceLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qc
