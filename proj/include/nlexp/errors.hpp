#pragma once

#include <stdexcept>
#include <string>

namespace nlexp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Test function growth exceeds what the distribution's tail can absorb.
struct NonIntegrableError : Error {
  using Error::Error;
};

// Adaptive quadrature ran out of panel budget before reaching tolerance.
struct QuadratureError : Error {
  using Error::Error;
};

// A function declared nondecreasing was caught decreasing on the sample grid.
struct MonotonicityError : Error {
  using Error::Error;
};

// A joint pair law was requested but never modeled.
struct MissingJointError : Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured size cap.
struct TooLargeError : Error {
  using Error::Error;
};

// A proof-chain inequality came out violated; indicates an implementation bug.
struct BoundViolatedError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  ValidationError(const std::string& field, const std::string& reason)
      : Error(field + ": " + reason), field(field), reason(reason) {}
  std::string field;
  std::string reason;
};

}  // namespace nlexp
