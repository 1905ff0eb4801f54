#include "delayh2/error.hpp"

namespace delayh2 {

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNotFinite:
    case ErrorCode::kNotSymmetric:
    case ErrorCode::kNotPositiveDefinite:
    case ErrorCode::kUnstable:
    case ErrorCode::kNonStrictlyProper:
    case ErrorCode::kInvalidPattern:
    case ErrorCode::kDelayExceedsHorizon:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kIo:
      return true;
    default:
      return false;
  }
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotFinite: return "NotFinite";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kUnstable: return "Unstable";
    case ErrorCode::kSingularResolvent: return "SingularResolvent";
    case ErrorCode::kSingularHessian: return "SingularHessian";
    case ErrorCode::kNonStrictlyProper: return "NonStrictlyProper";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotStabilizing: return "NotStabilizing";
    case ErrorCode::kInvalidPattern: return "InvalidPattern";
    case ErrorCode::kDelayExceedsHorizon: return "DelayExceedsHorizon";
    case ErrorCode::kIllConditioned: return "IllConditioned";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace delayh2
