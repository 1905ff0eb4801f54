#pragma once

#include <stdexcept>
#include <string>

namespace delayh2 {

enum class ErrorCode {
  kDimensionMismatch,
  kNotFinite,
  kNotSymmetric,
  kNotPositiveDefinite,
  kUnstable,
  kSingularResolvent,
  kSingularHessian,
  kNonStrictlyProper,
  kNoConvergence,
  kNotStabilizing,
  kInvalidPattern,
  kDelayExceedsHorizon,
  kIllConditioned,
  kInvalidArgument,
  kParse,
  kIo,
};

// Validation errors come from malformed inputs; everything else is a
// numerical failure during a solve.
bool is_validation_error(ErrorCode code);
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace delayh2
