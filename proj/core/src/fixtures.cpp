#include "spinflip/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace spinflip::fixtures {

std::vector<BlochVector> tetrahedron() {
  const double third = 1.0 / 3.0;
  return {
      {0.0, 0.0, 1.0},
      {std::sqrt(8.0) / 3.0, 0.0, -third},
      {-std::sqrt(2.0) / 3.0, std::sqrt(2.0 / 3.0), -third},
      {-std::sqrt(2.0) / 3.0, -std::sqrt(2.0 / 3.0), -third},
  };
}

std::vector<BlochVector> equator() { return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}}; }

std::vector<BlochVector> meridian_xz() {
  std::vector<BlochVector> out;
  for (int i = 0; i < 3; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / 3.0;
    out.push_back({std::sin(theta), 0.0, std::cos(theta)});
  }
  return out;
}

std::optional<std::vector<BlochVector>> by_name(std::string_view name) {
  if (name == "tetrahedron") return tetrahedron();
  if (name == "equator") return equator();
  if (name == "meridian-xz") return meridian_xz();
  return std::nullopt;
}

std::vector<std::string_view> names() { return {"tetrahedron", "equator", "meridian-xz"}; }

}  // namespace spinflip::fixtures
