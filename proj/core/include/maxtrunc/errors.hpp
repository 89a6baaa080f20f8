#pragma once

#include <stdexcept>
#include <string>

namespace maxtrunc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed its configured memory or work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A numeric routine produced or encountered non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its tolerance; carries the partial answer.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double partial_real, double partial_imag,
                 double abs_error_estimate)
      : Error(what),
        partial_real_(partial_real),
        partial_imag_(partial_imag),
        abs_error_estimate_(abs_error_estimate) {}

  double partial_real() const noexcept { return partial_real_; }
  double partial_imag() const noexcept { return partial_imag_; }
  double abs_error_estimate() const noexcept { return abs_error_estimate_; }

 private:
  double partial_real_;
  double partial_imag_;
  double abs_error_estimate_;
};

}  // namespace maxtrunc
