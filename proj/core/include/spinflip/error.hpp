#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinflip {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  DimensionMismatch,
  NotUnit,
  NotNormalized,
  EmptyInput,
  LengthMismatch,
  SizeMismatch,
  GammaOutOfRange,
  PriorMismatch,
  DuplicateVectors,
  NotMeridian,
};

std::string_view to_string(ErrorCode code);

// Every precondition failure in the library is reported through this type.
class Error : public std::invalid_argument {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinflip
