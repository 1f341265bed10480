#pragma once

#include <stdexcept>
#include <string>

namespace cex {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad permutation, index out of range, missing field.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A requested structure does not exist (e.g. no assignment partition for
// the given group sizes).
class Infeasible : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration was requested beyond its supported size.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed. Indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace detail
}  // namespace cex
