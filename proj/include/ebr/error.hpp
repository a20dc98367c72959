#pragma once

#include <stdexcept>
#include <string>

namespace ebr {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An input fails a state invariant (Hermiticity, unit trace, positivity).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal consistency check fails; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ebr
