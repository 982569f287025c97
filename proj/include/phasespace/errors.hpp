#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasespace {

enum class ErrorKind {
  NotHermitian,
  NotUnitTrace,
  NotPositive,
  NoConvergence,
  InvalidSpectrum,
  DimensionMismatch,
  NotInM,
  DegenerateGap,
  BasePointMismatch,
  TooFewSteps,
  InvalidPlan,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `residual()` carries the measured
/// violation (e.g. ‖M − M†‖_max for NotHermitian) when one exists, else 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double residual = 0.0)
      : std::runtime_error(message), kind_(kind), residual_(residual) {}

  ErrorKind kind() const noexcept { return kind_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

}  // namespace phasespace
