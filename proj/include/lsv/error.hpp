#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsv {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad index, size mismatch, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete input data (game and weight files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures. The CLI maps every subclass to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The quadratic form is not positive definite; carries the 0-based index
/// of the first Cholesky pivot that fell below tolerance.
class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(const std::string& what, std::size_t pivot)
      : NumericalError(what + " (failing pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class InconsistentConstraints : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lsv
