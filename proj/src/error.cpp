#include "wck/error.hpp"

namespace wck {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kOddExponent: return "OddExponent";
    case ErrorCode::kPoleAtQ: return "PoleAtQ";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroCharge: return "ZeroCharge";
    case ErrorCode::kOutsideSector: return "OutsideSector";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kTruncationMismatch: return "TruncationMismatch";
    case ErrorCode::kRayMismatch: return "RayMismatch";
    case ErrorCode::kUnsortedInput: return "UnsortedInput";
    case ErrorCode::kZeroChargeInSupport: return "ZeroChargeInSupport";
    case ErrorCode::kSupportOutsideSector: return "SupportOutsideSector";
    case ErrorCode::kSupportOnBoundary: return "SupportOnBoundary";
    case ErrorCode::kSupportLeavesSector: return "SupportLeavesSector";
    case ErrorCode::kUnknownArrow: return "UnknownArrow";
    case ErrorCode::kInvalidCut: return "InvalidCut";
    case ErrorCode::kMissingClassTableEntry: return "MissingClassTableEntry";
    case ErrorCode::kNonIntegralClass: return "NonIntegralClass";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNonpositiveRank: return "NonpositiveRank";
    case ErrorCode::kDegenerateSegment: return "DegenerateSegment";
    case ErrorCode::kRegionViolation: return "RegionViolation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFitFailed: return "FitFailed";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kUnknownArrow:
    case ErrorCode::kInvalidCut:
    case ErrorCode::kMissingClassTableEntry:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kTruncationMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace wck
