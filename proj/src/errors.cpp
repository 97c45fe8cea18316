#include "relbound/errors.hpp"

namespace relbound {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::FactorizationInvalid: return "FactorizationInvalid";
    case ErrorCode::PolarConditionInvalid: return "PolarConditionInvalid";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::OrientationError: return "OrientationError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace relbound
