#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "spinflip/bloch.hpp"

namespace spinflip::fixtures {

/// Vertices of the regular tetrahedron:
/// (0,0,1), (sqrt8/3, 0, -1/3), (-sqrt2/3, sqrt(2/3), -1/3), (-sqrt2/3, -sqrt(2/3), -1/3).
std::vector<BlochVector> tetrahedron();

/// (1,0,0), (0,1,0), (-1,0,0).
std::vector<BlochVector> equator();

/// Trine in the x-z plane: polar angles 0, 2pi/3, 4pi/3 measured from +z toward +x.
std::vector<BlochVector> meridian_xz();

/// "tetrahedron", "equator" or "meridian-xz".
std::optional<std::vector<BlochVector>> by_name(std::string_view name);

std::vector<std::string_view> names();

}  // namespace spinflip::fixtures
