#include "licurv/errors.hpp"

namespace licurv {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonOrthonormalFrame: return "NonOrthonormalFrame";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::WrongAlgebra: return "WrongAlgebra";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::NotSubalgebra: return "NotSubalgebra";
    case ErrorCode::NotAdHInvariant: return "NotAdHInvariant";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::TargetNotStrict: return "TargetNotStrict";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace licurv
