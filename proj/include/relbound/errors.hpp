#pragma once

#include <stdexcept>
#include <string>

namespace relbound {

enum class ErrorCode {
  Ok = 0,
  DimensionMismatch,
  NoConvergence,
  KTooLarge,
  NotPsd,
  FactorizationInvalid,
  PolarConditionInvalid,
  SingularInput,
  IndexOutOfRange,
  ZeroMatrix,
  NotInvertible,
  NotAdmissible,
  NotSquare,
  OrientationError,
  ParseError,
  SymmetryViolation,
  SpecInvalid,
  IoError,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace relbound
