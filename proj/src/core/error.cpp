#include "core/error.hpp"

namespace ppf {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kBadParameters: return "BadParameters";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNotEnoughPoints: return "NotEnoughPoints";
    case ErrorCode::kDimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::kDegenerateSites: return "DegenerateSites";
    case ErrorCode::kWrappedCell: return "WrappedCell";
    case ErrorCode::kNonInjectiveIndex: return "NonInjectiveIndex";
    case ErrorCode::kEqualIndices: return "EqualIndices";
    case ErrorCode::kDisconnectedClumping: return "DisconnectedClumping";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kImperfectPairing: return "ImperfectPairing";
    case ErrorCode::kPowerOfTwoRequired: return "PowerOfTwoRequired";
    case ErrorCode::kNotDyadic: return "NotDyadic";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kKernelDiverged: return "KernelDiverged";
    case ErrorCode::kUnknownFormat: return "UnknownFormat";
  }
  return "UnknownError";
}

}  // namespace ppf
