#include "spinflip/error.hpp"

namespace spinflip {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::PriorMismatch: return "PriorMismatch";
    case ErrorCode::DuplicateVectors: return "DuplicateVectors";
    case ErrorCode::NotMeridian: return "NotMeridian";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::invalid_argument(std::string(to_string(code)) + ": " + what),
      code_(code) {}

}  // namespace spinflip
