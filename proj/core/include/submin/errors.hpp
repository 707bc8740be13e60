#pragma once

#include <stdexcept>
#include <string>

namespace submin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or evaluation cap would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A point or box lies outside the domain it is used with.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A block of a Rho that must be nonincreasing is not.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// The oracle returned NaN or an infinity.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Bad arguments: shapes, parameter values, unknown names.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace submin
