#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nsreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (range, grid match, finiteness) was violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file did not match the expected binary layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A parabolic cylinder's time window contains no usable snapshot.
class WindowError : public Error {
 public:
  WindowError(const std::string& what, std::vector<double> available)
      : Error(what), available_(std::move(available)) {}

  const std::vector<double>& available_times() const noexcept { return available_; }

 private:
  std::vector<double> available_;
};

/// An iterative solve stopped at max_iter before reaching its tolerance.
/// Carries the best iterate's value and the residual it reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value, double residual, int iterations)
      : Error(what), best_value_(best_value), residual_(residual), iterations_(iterations) {}

  double best_value() const noexcept { return best_value_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_value_;
  double residual_;
  int iterations_;
};

/// The mini-solver detected a CFL violation or a non-finite state.
class SolverAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace nsreg
