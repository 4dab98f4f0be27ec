#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wck {

// Every failure raised by the engine carries one of these codes. The CLI maps
// them onto exit codes (see is_config_error).
enum class ErrorCode {
  kParse,
  kOddExponent,
  kPoleAtQ,
  kDimensionMismatch,
  kZeroCharge,
  kOutsideSector,
  kZeroVector,
  kTruncationMismatch,
  kRayMismatch,
  kUnsortedInput,
  kZeroChargeInSupport,
  kSupportOutsideSector,
  kSupportOnBoundary,
  kSupportLeavesSector,
  kUnknownArrow,
  kInvalidCut,
  kMissingClassTableEntry,
  kNonIntegralClass,
  kTooLarge,
  kNonpositiveRank,
  kDegenerateSegment,
  kRegionViolation,
  kInvalidArgument,
  kFitFailed,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors caused by bad input files or flags rather than by the computation.
bool is_config_error(ErrorCode code);

}  // namespace wck
