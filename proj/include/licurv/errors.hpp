#pragma once

#include <stdexcept>
#include <string>

namespace licurv {

// Numeric values match licurv_status in licurv.h.
enum class ErrorCode : int {
  DimensionMismatch = 1,
  NotSymmetric = 2,
  NotPositiveDefinite = 3,
  NonOrthonormalFrame = 4,
  NonPositiveValue = 5,
  DegeneratePlane = 6,
  IndexOutOfRange = 7,
  ZeroVector = 8,
  WrongAlgebra = 9,
  NotNonnegative = 10,
  NotSubalgebra = 11,
  NotAdHInvariant = 12,
  NotSPD = 13,
  TargetNotStrict = 14,
  NonPositiveLambda = 15,
  InvalidAlgebra = 16,
  InvalidChain = 17,
  ParseError = 18,
  InvalidArgument = 19,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace licurv
