#pragma once

#include <stdexcept>
#include <string>

namespace bcm {

/// Violated input contract: wrong lengths, bad horizons, malformed files.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that come from the numbers rather than the call shape.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Krein trace y_n vanished (relative to max|y|), so b_n = (y_{n+1}+y_{n-1})/y_n
/// cannot be evaluated reliably.
class DegenerateTrace : public NumericalError {
 public:
  DegenerateTrace(int index, double value)
      : NumericalError("degenerate Krein trace: |y_" + std::to_string(index) +
                       "| = " + std::to_string(value) + " is numerically zero"),
        index_(index),
        value_(value) {}
  int index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  int index_;
  double value_;
};

/// A linear system built from the kernel could not be solved; the kernel is not
/// admissible response data.
class InadmissibleData : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Connecting matrix C^tau was singular inside the Krein solver.
class SingularConnecting : public InadmissibleData {
 public:
  explicit SingularConnecting(int horizon)
      : InadmissibleData("connecting matrix C^" + std::to_string(horizon) +
                         " is numerically singular"),
        horizon_(horizon) {}
  int horizon() const noexcept { return horizon_; }

 private:
  int horizon_;
};

/// Leading block of the rotated connecting matrix is singular or not positive.
class SingularLeadingMinor : public InadmissibleData {
 public:
  SingularLeadingMinor(int order, double determinant)
      : InadmissibleData("leading " + std::to_string(order) + "x" + std::to_string(order) +
                         " block of the rotated connecting matrix has determinant " +
                         std::to_string(determinant)),
        order_(order),
        determinant_(determinant) {}
  int order() const noexcept { return order_; }
  double determinant() const noexcept { return determinant_; }

 private:
  int order_;
  double determinant_;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bcm
