#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinflip/bloch.hpp"

namespace spinflip::cli {

/// Malformed input: unreadable file, bad JSON, wrong schema. Exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input with unusable content: duplicates, bad priors,
/// mismatched field lengths. Exit code 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors further than this from unit length are renormalized with a warning.
inline constexpr double kSilentNormalizeTol = 1e-6;

/// A set of Bloch vectors read from JSON:
///   {"vectors": [[x,y,z], ...]} or {"angles": [[theta, phi], ...]},
///   optional "labels": [string, ...] and "priors": [real, ...].
/// Unknown keys are ignored, so a JSON report can be read back as input.
struct VectorSetDocument {
  std::vector<BlochVector> vectors;
  std::vector<std::string> labels;
  std::optional<std::vector<double>> priors;
};

/// Parses and validates. Warnings (renormalized vectors) go to `warnings`.
VectorSetDocument parse_document(const std::string& text, std::ostream& warnings);
VectorSetDocument load_document(const std::string& path, std::ostream& warnings);

/// "x,y,z" -> three reals. Throws ParseError.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace spinflip::cli
