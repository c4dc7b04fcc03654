#pragma once

#include <stdexcept>
#include <string>

namespace kinterp {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated or the requested quantity is undefined for the input
// (nonpositive argument, infinite-measure level set, nonzero tail where an
// L0 quantity is requested, mismatched dimensions, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Singular value decomposition did not meet the residual contract.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinterp
