#pragma once

#include <stdexcept>
#include <string>

namespace swarmqp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition: bad dimensions, ill-posed problem, bad flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A matrix or data set is degenerate (singular covariance, non-SPD input).
class DegenerateError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Two class ellipsoids intersect, so no separating shortest path exists.
class SeparabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Input file could not be parsed.
class IngestionError : public Error {
 public:
  using Error::Error;
};

}  // namespace swarmqp
