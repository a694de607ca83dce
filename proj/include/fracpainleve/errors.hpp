#pragma once

#include <stdexcept>
#include <string>

namespace fracpainleve {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed problem files, out-of-range parameters, grammar errors.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operator's domain (e.g. t <= base point, malformed grid).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical failure: non-convergence, loss of accuracy, certificate violation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the range where an algorithm is reliable.
class RangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fracpainleve
