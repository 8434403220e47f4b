#ifndef NOVIKOV_ERROR_HPP
#define NOVIKOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace novikov {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (b <= 0, phi^2 >= c, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Newton iterate left the smooth-wave region w^2 < c.
class DomainExitError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : Error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver breakdown. Carries a crude conditioning diagnostic of the input.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double matrix_norm = 0.0)
      : Error(what), matrix_norm_(matrix_norm) {}

  double matrix_norm() const noexcept { return matrix_norm_; }

 private:
  double matrix_norm_;
};

/// Cubic coefficients that should be real came out with a large imaginary residue.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Leading cubic coefficient vanished.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class BracketingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace novikov

#endif  // NOVIKOV_ERROR_HPP
