#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinflip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;

/// Runs the spinflip command line. `args` excludes the program name.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinflip::cli
