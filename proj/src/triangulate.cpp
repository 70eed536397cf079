#include "wedgebound/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <list>

#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

// Closed-triangle membership for p, excluding points that coincide with a corner.
bool blocks_ear(Point p, Point a, Point b, Point c, double eps) {
  if (p == a || p == b || p == c) return false;
  const double d1 = cross(b - a, p - a);
  const double d2 = cross(c - b, p - b);
  const double d3 = cross(a - c, p - c);
  return d1 >= -eps && d2 >= -eps && d3 >= -eps;
}

}  // namespace

std::vector<Triangle> ear_clip(const std::vector<Point>& loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) throw MeshError("ear_clip needs at least three vertices");
  double scale = 0;
  for (Point p : loop) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double eps = 1e-14 * scale * scale;

  std::vector<int> ring(n);
  for (int i = 0; i < n; ++i) ring[i] = i;
  std::vector<Triangle> out;
  out.reserve(n - 2);

  while (ring.size() > 3) {
    const int m = static_cast<int>(ring.size());
    int best = -1;
    double best_quality = -1;
    for (int i = 0; i < m; ++i) {
      const int ia = ring[(i + m - 1) % m];
      const int ib = ring[i];
      const int ic = ring[(i + 1) % m];
      const Point a = loop[ia], b = loop[ib], c = loop[ic];
      const double twice_area = cross(b - a, c - b);
      if (twice_area <= eps) continue;
      bool blocked = false;
      for (int j = 0; j < m && !blocked; ++j) {
        const int idx = ring[j];
        if (idx == ia || idx == ib || idx == ic) continue;
        blocked = blocks_ear(loop[idx], a, b, c, eps);
      }
      if (blocked) continue;
      // Prefer well-shaped ears: area over squared longest edge.
      const double longest = std::max({dot(b - a, b - a), dot(c - b, c - b), dot(a - c, a - c)});
      const double quality = twice_area / longest;
      if (quality > best_quality) {
        best_quality = quality;
        best = i;
      }
    }
    if (best < 0) throw MeshError("ear_clip: no ear found (degenerate polygon?)");
    out.push_back({ring[(best + m - 1) % m], ring[best], ring[(best + 1) % m]});
    ring.erase(ring.begin() + best);
  }
  const Point a = loop[ring[0]], b = loop[ring[1]], c = loop[ring[2]];
  if (cross(b - a, c - b) <= eps) throw MeshError("ear_clip: degenerate final triangle");
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

}  // namespace wedgebound
