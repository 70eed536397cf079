#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wedgebound {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double polar_angle(Point p) { return std::atan2(p.y, p.x); }
inline Point rotate(Point p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

/// Placement of the reference wedge in world coordinates. A world point p has
/// frame coordinates rotate(p - origin, -rotation): a pose with rotation pi/2
/// maps the world point (1, 0) to (0, -1).
struct Pose {
  Point origin{};
  double rotation = 0.0;

  Pose() = default;
  Pose(Point o, double r) : origin(o), rotation(wrap_angle(r)) {}

  Point to_frame(Point world) const { return rotate(world - origin, -rotation); }
  Point to_world(Point frame) const { return rotate(frame, rotation) + origin; }
};

enum class WedgeKind { PayneWeinberger, Reflex };

/// S_alpha = {0 < theta < pi/alpha}, alpha >= 1, or
/// R_beta = {-pi/beta < theta < pi/beta}, 1 <= beta <= 2.
struct WedgeFamily {
  WedgeKind kind = WedgeKind::Reflex;
  double param = 1.0;

  static WedgeFamily payne_weinberger(double alpha);
  static WedgeFamily reflex(double beta);

  double lower_angle() const;
  double upper_angle() const;
  double aperture() const { return upper_angle() - lower_angle(); }
  std::string describe() const;
};

struct Disc {
  Point center;
  double radius = 1.0;
};

/// Sector {vertex + r (cos t, sin t) : 0 < r < radius, |t - bisector| < aperture/2}.
/// Aperture 2 pi gives a disc cut along the ray opposite the bisector.
struct CircularSector {
  Point vertex;
  double radius = 1.0;
  double aperture = std::numbers::pi;
  double bisector = 0.0;
};

struct AnnularSector {
  Point center;
  double rho1 = 0.5;
  double rho2 = 1.0;
  double aperture = std::numbers::pi;
  double bisector = 0.0;
};

struct Polygon {
  std::vector<Point> vertices;
};

using Shape = std::variant<Disc, CircularSector, AnnularSector, Polygon>;
/// Open polyline of zero area where the Dirichlet condition is imposed from both sides.
using Chain = std::vector<Point>;

/// A membrane: shape, slits, and the default wedge pose used when the caller
/// does not supply one. Construction validates and canonicalizes (polygons
/// are made counterclockwise).
class Domain {
 public:
  explicit Domain(Shape shape, std::vector<Chain> slits = {}, Pose pose = {});

  const Shape& shape() const { return shape_; }
  const std::vector<Chain>& slits() const { return slits_; }
  const Pose& pose() const { return pose_; }
  Domain with_pose(Pose pose) const;

  bool is_polygon() const { return std::holds_alternative<Polygon>(shape_); }
  const Polygon* polygon() const { return std::get_if<Polygon>(&shape_); }

 private:
  Shape shape_;
  std::vector<Chain> slits_;
  Pose pose_;
};

struct Segment {
  Point a;
  Point b;
};

/// Arc of the circle |p - center| = radius from angle t0 to t1 (t1 < t0 for
/// clockwise traversal).
struct Arc {
  Point center;
  double radius = 1.0;
  double t0 = 0.0;
  double t1 = 0.0;

  Point at(double t) const { return center + radius * Point{std::cos(t), std::sin(t)}; }
};

struct BoundaryPiece {
  std::variant<Segment, Arc> curve;
  bool slit = false;

  double length() const;
  /// Point at normalized parameter s in [0, 1].
  Point at(double s) const;
};

/// Outer boundary counterclockwise, followed by both sides of every slit
/// (each slit segment once per side, with opposite orientation).
struct BoundaryCurve {
  std::vector<BoundaryPiece> pieces;
  double total_length() const;
};

struct ContainmentReport {
  bool ok = false;
  std::optional<Point> violation;
  std::string reason;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Expresses the domain in the wedge frame defined by `pose`; the result has
/// an identity pose.
Domain to_wedge_frame(const Domain& domain, const Pose& pose);
/// Same as to_wedge_frame(domain, domain.pose()).
Domain to_wedge_frame(const Domain& domain);
/// Uniform scaling about the world origin (the pose origin scales too).
Domain scaled(const Domain& domain, double factor);

/// Tests D subset S_alpha / R_beta for a domain already in the wedge frame.
/// Slits lying on the excluded ray of R_1 remove that ray from the domain.
ContainmentReport contains_in_wedge(const Domain& frame_domain, const WedgeFamily& wedge);

double area(const Domain& domain);

/// Open-region membership, ignoring slits (they have zero area).
bool inside(const Domain& domain, Point p);

BoundaryCurve boundary(const Domain& domain);

/// Axis-aligned bounding box {min, max}.
std::pair<Point, Point> bounding_box(const Domain& domain);

/// Radial extent along direction theta for a domain that is star-shaped with
/// respect to the origin: distance from the origin to the boundary, or 0 when
/// the ray misses the domain. Throws DomainError when the ray meets the domain
/// in more than one interval or in an interval not starting at the origin.
double ray_cast(const Domain& frame_domain, double theta);

/// Every interval (r0, r1) with r t in D for r0 < r < r1, t = (cos theta, sin theta).
std::vector<Interval> ray_profile(const Domain& frame_domain, double theta);

/// ray_profile with the boundary and length scale computed once.
class RayProfiler {
 public:
  explicit RayProfiler(const Domain& frame_domain);
  std::vector<Interval> operator()(double theta) const;
  double scale() const { return scale_; }

 private:
  const Domain* domain_;
  std::vector<BoundaryPiece> outer_;
  double scale_;
  double far_;
};

/// 720-ray star-shapedness certificate with respect to the origin.
bool is_star_shaped(const Domain& frame_domain);

/// Angles (in (-pi, pi]) where the ray profile is non-smooth: directions of
/// polygon vertices, arc endpoints, and tangents to circles.
std::vector<double> profile_breakpoints(const Domain& frame_domain);

/// The map (r, theta) -> r^((beta+1)/3) (cos(beta theta/2), sin(beta theta/2))
/// that sends R_beta into the right half-plane.
Point proof_map(double r, double theta, double beta);

/// Total signed area of a closed polygon (positive when counterclockwise).
double signed_area(const std::vector<Point>& polygon);

/// True when no two non-adjacent edges intersect.
bool is_simple(const std::vector<Point>& polygon);

}  // namespace wedgebound
