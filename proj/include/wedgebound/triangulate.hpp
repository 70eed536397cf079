#pragma once

#include <array>
#include <vector>

#include "wedgebound/geometry.hpp"

namespace wedgebound {

using Triangle = std::array<int, 3>;

/// Ear-clipping triangulation of a counterclockwise, weakly simple loop.
/// Repeated coordinates (the two sides of a slit) are allowed; they are
/// treated as distinct vertices. Returned triangles index into `loop` and are
/// counterclockwise. Throws MeshError when no ear can be found.
std::vector<Triangle> ear_clip(const std::vector<Point>& loop);

}  // namespace wedgebound
