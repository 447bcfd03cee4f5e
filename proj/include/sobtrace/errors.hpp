#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sobtrace {

enum class ErrorCode {
  InvalidArgument,
  DegenerateNodes,
  UnsupportedOrder,
  BadInterval,
  BadOrder,
  QuadratureFailure,
  Exhausted,
  TooFewPoints,
  InstanceTooLarge,
  NotApplicable,
  ZeroTailViolation,
  NonCompactSupport,
  BadSubsequence,
  BadSimplex,
  WindowTooSmall,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Adaptive quadrature hit its panel cap; carries the last estimate.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double best_estimate)
      : Error(ErrorCode::QuadratureFailure, what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace sobtrace
