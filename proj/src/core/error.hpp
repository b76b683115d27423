#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppf {

// Mirrors ppf_status in the C header; keep the numeric values in sync.
enum class ErrorCode : int {
  kBadParameters = 1,
  kParseError = 2,
  kIoError = 3,
  kNotEnoughPoints = 4,
  kDimensionUnsupported = 5,
  kDegenerateSites = 6,
  kWrappedCell = 7,
  kNonInjectiveIndex = 8,
  kEqualIndices = 9,
  kDisconnectedClumping = 10,
  kNotATree = 11,
  kImperfectPairing = 12,
  kPowerOfTwoRequired = 13,
  kNotDyadic = 14,
  kDimensionMismatch = 15,
  kKernelDiverged = 16,
  kUnknownFormat = 17,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppf
