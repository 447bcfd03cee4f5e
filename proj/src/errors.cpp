#include "sobtrace/errors.hpp"

namespace sobtrace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateNodes: return "DegenerateNodes";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ZeroTailViolation: return "ZeroTailViolation";
    case ErrorCode::NonCompactSupport: return "NonCompactSupport";
    case ErrorCode::BadSubsequence: return "BadSubsequence";
    case ErrorCode::BadSimplex: return "BadSimplex";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
  }
  return "Unknown";
}

}  // namespace sobtrace
