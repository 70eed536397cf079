#include "wedgebound/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Does angle t lie on the arc from t0 to t1 (either orientation), with slack?
bool angle_on_arc(double t, double t0, double t1, double slack = 1e-12) {
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  if (hi - lo >= kTwoPi - slack) return true;
  double shifted = std::fmod(t - lo, kTwoPi);
  if (shifted < 0) shifted += kTwoPi;
  return shifted <= hi - lo + slack || shifted >= kTwoPi - slack;
}

double length_scale(const Domain& domain) {
  const auto [lo, hi] = bounding_box(domain);
  return std::max({std::fabs(lo.x), std::fabs(lo.y), std::fabs(hi.x), std::fabs(hi.y),
                   hi.x - lo.x, hi.y - lo.y, 1e-300});
}

double distance_to_segment(Point p, Segment s) {
  const Point e = s.b - s.a;
  const double len2 = dot(e, e);
  double t = len2 > 0 ? dot(p - s.a, e) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (s.a + t * e));
}

double distance_to_arc(Point p, const Arc& arc) {
  const Point rel = p - arc.center;
  if (norm(rel) > 0 && angle_on_arc(polar_angle(rel), arc.t0, arc.t1)) {
    return std::fabs(norm(rel) - arc.radius);
  }
  return std::min(norm(p - arc.at(arc.t0)), norm(p - arc.at(arc.t1)));
}

double distance_to_piece(Point p, const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece.curve)) return distance_to_segment(p, *s);
  return distance_to_arc(p, std::get<Arc>(piece.curve));
}

bool on_outer_boundary(const Domain& domain, Point p, double tol) {
  for (const BoundaryPiece& piece : boundary(domain).pieces) {
    if (!piece.slit && distance_to_piece(p, piece) <= tol) return true;
  }
  return false;
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const auto orient = [](Point p, Point q, Point r) {
    const double v = cross(q - p, r - p);
    return (v > 0) - (v < 0);
  };
  const auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

void validate_slits(const Domain& domain, const std::vector<Chain>& slits) {
  const double tol = 1e-9 * length_scale(domain);
  const auto in_closure = [&](Point p) {
    return inside(domain, p) || on_outer_boundary(domain, p, tol);
  };
  for (const Chain& chain : slits) {
    if (chain.size() < 2) throw ValidationError("slit chain needs at least two points");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (!finite(chain[i])) throw ValidationError("slit point is not finite");
      if (i > 0 && norm(chain[i] - chain[i - 1]) <= tol) {
        throw ValidationError("slit chain has a zero-length segment");
      }
      if (!in_closure(chain[i])) throw ValidationError("slit point outside the domain");
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      for (double s : {0.25, 0.5, 0.75}) {
        if (!in_closure(chain[i] + s * (chain[i + 1] - chain[i]))) {
          throw ValidationError("slit segment leaves the domain");
        }
      }
    }
    // Interior chain points must not touch the outer boundary.
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      if (on_outer_boundary(domain, chain[i], tol)) {
        throw ValidationError("slit chain touches the boundary away from its endpoints");
      }
    }
  }
}

}  // namespace

double wrap_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

WedgeFamily WedgeFamily::payne_weinberger(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw DomainError("Payne-Weinberger wedge requires alpha >= 1");
  }
  return {WedgeKind::PayneWeinberger, alpha};
}

WedgeFamily WedgeFamily::reflex(double beta) {
  if (!(beta >= 1.0 && beta <= 2.0)) throw DomainError("reflex wedge requires 1 <= beta <= 2");
  return {WedgeKind::Reflex, beta};
}

double WedgeFamily::lower_angle() const {
  return kind == WedgeKind::PayneWeinberger ? 0.0 : -kPi / param;
}

double WedgeFamily::upper_angle() const { return kPi / param; }

std::string WedgeFamily::describe() const {
  std::ostringstream out;
  out << (kind == WedgeKind::PayneWeinberger ? "S_alpha(alpha=" : "R_beta(beta=") << param << ")";
  return out.str();
}

Domain::Domain(Shape shape, std::vector<Chain> slits, Pose pose)
    : shape_(std::move(shape)), slits_(std::move(slits)), pose_(pose) {
  std::visit(
      [](auto& s) {
        using T = std::decay_t<decltype(s)>;
        const auto check_aperture = [](double a) {
          if (!(a > 0.0 && a <= kTwoPi * (1 + 1e-15))) {
            throw ValidationError("aperture must lie in (0, 2 pi]");
          }
        };
        if constexpr (std::is_same_v<T, Disc>) {
          if (!(s.radius > 0.0) || !finite(s.center)) throw ValidationError("disc radius must be > 0");
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          if (!(s.radius > 0.0) || !finite(s.vertex)) throw ValidationError("sector radius must be > 0");
          check_aperture(s.aperture);
          s.aperture = std::min(s.aperture, kTwoPi);
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          if (!(s.rho1 > 0.0 && s.rho1 < s.rho2) || !finite(s.center)) {
            throw ValidationError("annular sector requires 0 < rho1 < rho2");
          }
          check_aperture(s.aperture);
          s.aperture = std::min(s.aperture, kTwoPi);
        } else {
          if (s.vertices.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
          for (Point p : s.vertices) {
            if (!finite(p)) throw ValidationError("polygon vertex is not finite");
          }
          if (!is_simple(s.vertices)) throw ValidationError("polygon is not simple");
          const double a = signed_area(s.vertices);
          if (a == 0.0) throw ValidationError("polygon has zero area");
          if (a < 0) std::reverse(s.vertices.begin(), s.vertices.end());
        }
      },
      shape_);
  validate_slits(*this, slits_);
}

Domain Domain::with_pose(Pose pose) const {
  Domain copy = *this;
  copy.pose_ = pose;
  return copy;
}

double BoundaryPiece::length() const {
  if (const auto* s = std::get_if<Segment>(&curve)) return norm(s->b - s->a);
  const Arc& a = std::get<Arc>(curve);
  return a.radius * std::fabs(a.t1 - a.t0);
}

Point BoundaryPiece::at(double s) const {
  if (const auto* seg = std::get_if<Segment>(&curve)) return seg->a + s * (seg->b - seg->a);
  const Arc& a = std::get<Arc>(curve);
  return a.at(a.t0 + s * (a.t1 - a.t0));
}

double BoundaryCurve::total_length() const {
  double total = 0;
  for (const auto& p : pieces) total += p.length();
  return total;
}

BoundaryCurve boundary(const Domain& domain) {
  BoundaryCurve out;
  auto add_segment = [&](Point a, Point b, bool slit = false) {
    out.pieces.push_back({Segment{a, b}, slit});
  };
  auto add_arc = [&](Point c, double r, double t0, double t1) {
    out.pieces.push_back({Arc{c, r, t0, t1}, false});
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          add_arc(s.center, s.radius, -kPi, kPi);
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          const double t0 = s.bisector - s.aperture / 2;
          const double t1 = s.bisector + s.aperture / 2;
          add_segment(s.vertex, s.vertex + s.radius * unit(t0));
          add_arc(s.vertex, s.radius, t0, t1);
          add_segment(s.vertex + s.radius * unit(t1), s.vertex);
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          const double t0 = s.bisector - s.aperture / 2;
          const double t1 = s.bisector + s.aperture / 2;
          add_segment(s.center + s.rho1 * unit(t0), s.center + s.rho2 * unit(t0));
          add_arc(s.center, s.rho2, t0, t1);
          add_segment(s.center + s.rho2 * unit(t1), s.center + s.rho1 * unit(t1));
          add_arc(s.center, s.rho1, t1, t0);
        } else {
          const auto& v = s.vertices;
          for (std::size_t i = 0; i < v.size(); ++i) add_segment(v[i], v[(i + 1) % v.size()]);
        }
      },
      domain.shape());
  for (const Chain& chain : domain.slits()) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) add_segment(chain[i], chain[i + 1], true);
    for (std::size_t i = chain.size() - 1; i > 0; --i) add_segment(chain[i], chain[i - 1], true);
  }
  return out;
}

Domain to_wedge_frame(const Domain& domain, const Pose& pose) {
  const auto map = [&](Point p) { return pose.to_frame(p); };
  Shape shape = std::visit(
      [&](auto s) -> Shape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          s.center = map(s.center);
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          s.vertex = map(s.vertex);
          s.bisector = wrap_angle(s.bisector - pose.rotation);
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          s.center = map(s.center);
          s.bisector = wrap_angle(s.bisector - pose.rotation);
        } else {
          for (Point& p : s.vertices) p = map(p);
        }
        return s;
      },
      domain.shape());
  std::vector<Chain> slits = domain.slits();
  for (Chain& chain : slits) {
    for (Point& p : chain) p = map(p);
  }
  return Domain(std::move(shape), std::move(slits), Pose{});
}

Domain to_wedge_frame(const Domain& domain) { return to_wedge_frame(domain, domain.pose()); }

Domain scaled(const Domain& domain, double factor) {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  Shape shape = std::visit(
      [&](auto s) -> Shape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          s.center = factor * s.center;
          s.radius *= factor;
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          s.vertex = factor * s.vertex;
          s.radius *= factor;
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          s.center = factor * s.center;
          s.rho1 *= factor;
          s.rho2 *= factor;
        } else {
          for (Point& p : s.vertices) p = factor * p;
        }
        return s;
      },
      domain.shape());
  std::vector<Chain> slits = domain.slits();
  for (Chain& chain : slits) {
    for (Point& p : chain) p = factor * p;
  }
  const Pose pose{factor * domain.pose().origin, domain.pose().rotation};
  return Domain(std::move(shape), std::move(slits), pose);
}

double signed_area(const std::vector<Point>& polygon) {
  double twice = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return twice / 2;
}

bool is_simple(const std::vector<Point>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  // Adjacent edges may not fold back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[(i + n - 1) % n];
    const Point b = v[i];
    const Point c = v[(i + 1) % n];
    if (cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0) return false;
  }
  return true;
}

double area(const Domain& domain) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return kPi * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          return s.aperture * s.radius * s.radius / 2;
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          return s.aperture * (s.rho2 * s.rho2 - s.rho1 * s.rho1) / 2;
        } else {
          return std::fabs(signed_area(s.vertices));
        }
      },
      domain.shape());
}

bool inside(const Domain& domain, Point p) {
  return std::visit(
      [p](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return norm(p - s.center) < s.radius;
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          const Point rel = p - s.vertex;
          const double r = norm(rel);
          return r > 0 && r < s.radius &&
                 std::fabs(wrap_angle(polar_angle(rel) - s.bisector)) < s.aperture / 2;
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          const Point rel = p - s.center;
          const double r = norm(rel);
          return r > s.rho1 && r < s.rho2 &&
                 std::fabs(wrap_angle(polar_angle(rel) - s.bisector)) < s.aperture / 2;
        } else {
          bool in = false;
          const auto& v = s.vertices;
          for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
            if ((v[i].y > p.y) != (v[j].y > p.y)) {
              const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
              if (p.x < x) in = !in;
            }
          }
          return in;
        }
      },
      domain.shape());
}

std::pair<Point, Point> bounding_box(const Domain& domain) {
  std::vector<Point> pts;
  const auto add_arc_extremes = [&](Point c, double r, double t0, double t1) {
    pts.push_back(c + r * unit(t0));
    pts.push_back(c + r * unit(t1));
    for (double t : {0.0, kPi / 2, kPi, -kPi / 2}) {
      if (angle_on_arc(t, t0, t1)) pts.push_back(c + r * unit(t));
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          add_arc_extremes(s.center, s.radius, -kPi, kPi);
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          pts.push_back(s.vertex);
          add_arc_extremes(s.vertex, s.radius, s.bisector - s.aperture / 2,
                           s.bisector + s.aperture / 2);
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          add_arc_extremes(s.center, s.rho1, s.bisector - s.aperture / 2,
                           s.bisector + s.aperture / 2);
          add_arc_extremes(s.center, s.rho2, s.bisector - s.aperture / 2,
                           s.bisector + s.aperture / 2);
        } else {
          pts = s.vertices;
        }
      },
      domain.shape());
  Point lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point hi{-lo.x, -lo.y};
  for (Point p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  return {lo, hi};
}

namespace {

// r > 0 where the ray t*dir meets the piece.
void ray_hits(const BoundaryPiece& piece, Point dir, std::vector<double>& hits) {
  if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
    const Point e = seg->b - seg->a;
    const double denom = cross(dir, e);
    const double scale = norm(e) * (norm(seg->a) + norm(seg->b) + 1e-300);
    if (std::fabs(denom) <= 1e-14 * norm(e)) {
      if (std::fabs(cross(dir, seg->a)) <= 1e-12 * scale) {
        for (Point p : {seg->a, seg->b}) {
          if (dot(dir, p) > 0) hits.push_back(dot(dir, p));
        }
      }
      return;
    }
    const double r = cross(seg->a, e) / denom;
    const double s = cross(seg->a, dir) / denom;
    if (r > 0 && s >= -1e-12 && s <= 1 + 1e-12) hits.push_back(r);
    return;
  }
  const Arc& arc = std::get<Arc>(piece.curve);
  // Cancellation-free forms: the offset of the centre from the ray line, and
  // the product of the roots for the near one.
  const double b = dot(dir, arc.center);
  const double p = cross(dir, arc.center);
  const double disc = (arc.radius - p) * (arc.radius + p);
  if (disc < 0) return;
  const double root = std::sqrt(disc);
  const double dc = norm(arc.center);
  const double far = b + std::copysign(root, b);
  const double near = far != 0 ? (dc - arc.radius) * (dc + arc.radius) / far : 0.0;
  for (double r : {near, far}) {
    if (r <= 0) continue;
    const Point rel = r * dir - arc.center;
    if (angle_on_arc(polar_angle(rel), arc.t0, arc.t1, 1e-10)) hits.push_back(r);
  }
}

}  // namespace

RayProfiler::RayProfiler(const Domain& frame_domain)
    : domain_(&frame_domain), scale_(length_scale(frame_domain)) {
  for (BoundaryPiece& piece : boundary(frame_domain).pieces) {
    if (!piece.slit) outer_.push_back(piece);
  }
  const auto [lo, hi] = bounding_box(frame_domain);
  far_ = 2 * (scale_ + norm(lo) + norm(hi));
}

std::vector<Interval> RayProfiler::operator()(double theta) const {
  const Point dir = unit(theta);
  std::vector<double> hits{0.0};
  for (const BoundaryPiece& piece : outer_) ray_hits(piece, dir, hits);
  hits.push_back(far_);
  std::sort(hits.begin(), hits.end());
  std::vector<double> unique;
  for (double h : hits) {
    if (unique.empty() || h - unique.back() > 1e-13 * scale_) unique.push_back(h);
  }
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < unique.size(); ++i) {
    const double mid = 0.5 * (unique[i] + unique[i + 1]);
    if (!inside(*domain_, mid * dir)) continue;
    if (!out.empty() && std::fabs(out.back().hi - unique[i]) <= 1e-13 * scale_) {
      out.back().hi = unique[i + 1];
    } else {
      out.push_back({unique[i], unique[i + 1]});
    }
  }
  return out;
}

std::vector<Interval> ray_profile(const Domain& frame_domain, double theta) {
  return RayProfiler(frame_domain)(theta);
}

double ray_cast(const Domain& frame_domain, double theta) {
  const std::vector<Interval> profile = ray_profile(frame_domain, theta);
  if (profile.empty()) return 0.0;
  const double scale = length_scale(frame_domain);
  if (profile.size() > 1 || profile.front().lo > 1e-12 * scale) {
    throw DomainError("domain is not star-shaped with respect to the origin");
  }
  return profile.front().hi;
}

bool is_star_shaped(const Domain& frame_domain) {
  constexpr int kRays = 720;
  const RayProfiler profiler(frame_domain);
  for (int k = 0; k < kRays; ++k) {
    const double theta = -kPi + (k + 0.5) * kTwoPi / kRays;
    const std::vector<Interval> profile = profiler(theta);
    if (profile.empty()) continue;
    if (profile.size() > 1 || profile.front().lo > 1e-10 * profiler.scale()) return false;
  }
  return true;
}

std::vector<double> profile_breakpoints(const Domain& frame_domain) {
  std::vector<double> angles;
  const auto add_point = [&](Point p) {
    if (norm(p) > 0) angles.push_back(polar_angle(p));
  };
  for (const BoundaryPiece& piece : boundary(frame_domain).pieces) {
    if (piece.slit) continue;
    if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
      add_point(seg->a);
      add_point(seg->b);
      continue;
    }
    const Arc& arc = std::get<Arc>(piece.curve);
    add_point(arc.at(arc.t0));
    add_point(arc.at(arc.t1));
    const double dc = norm(arc.center);
    if (dc > arc.radius) {
      const double half = std::asin(arc.radius / dc);
      const double base = polar_angle(arc.center);
      for (double sign : {-1.0, 1.0}) {
        // Tangent point lies at angle base + pi -/+ (pi/2 - half) on the circle.
        const double t = base + kPi + sign * (kPi / 2 - half);
        if (angle_on_arc(t, arc.t0, arc.t1)) add_point(arc.at(t));
      }
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
               angles.end());
  return angles;
}

Point proof_map(double r, double theta, double beta) {
  if (!(beta >= 1.0 && beta <= 2.0)) throw DomainError("proof_map requires 1 <= beta <= 2");
  if (!(r >= 0.0)) throw DomainError("proof_map requires r >= 0");
  if (!(std::fabs(theta) < kPi / beta)) throw DomainError("proof_map requires |theta| < pi/beta");
  const double radius = std::pow(r, (beta + 1) / 3);
  return {radius * std::cos(beta * theta / 2), radius * std::sin(beta * theta / 2)};
}

// Containment ------------------------------------------------------------

namespace {

struct LinearRange {
  double lo;
  double hi;
};

// Subset of [0, 1] where a + b t > tol.
std::optional<LinearRange> positive_part(double a, double b, double tol) {
  if (std::fabs(b) < 1e-300) {
    return a > tol ? std::optional<LinearRange>({0.0, 1.0}) : std::nullopt;
  }
  const double root = (tol - a) / b;
  LinearRange r = b > 0 ? LinearRange{std::max(0.0, root), 1.0} : LinearRange{0.0, std::min(1.0, root)};
  if (r.hi <= r.lo) return std::nullopt;
  return r;
}

// Angles t with A + R sin(t - phase) > tol, as a list of disjoint ranges
// intersected with [t0, t1] (t0 < t1, t1 - t0 <= 2 pi).
std::vector<LinearRange> arc_positive(double A, double R, double phase, double tol,
                                      const std::vector<LinearRange>& within) {
  const double s = (tol - A) / R;
  if (s >= 1) return {};
  if (s < -1) return within;
  const double first = phase + std::asin(s);
  const double last = phase + kPi - std::asin(s);
  std::vector<LinearRange> out;
  for (const LinearRange& w : within) {
    for (int k = -3; k <= 3; ++k) {
      const double lo = std::max(w.lo, first + k * kTwoPi);
      const double hi = std::min(w.hi, last + k * kTwoPi);
      if (hi > lo) out.push_back({lo, hi});
    }
  }
  return out;
}

std::optional<Point> segment_in_reflex_complement(Segment seg, Point e_plus, Point e_minus,
                                                  double tol) {
  // int(W_c) = {cross(e+, p) > 0} intersect {cross(p, e-) > 0}.
  const Point d = seg.b - seg.a;
  const auto r1 = positive_part(cross(e_plus, seg.a), cross(e_plus, d), tol);
  const auto r2 = positive_part(cross(seg.a, e_minus), cross(d, e_minus), tol);
  if (!r1 || !r2) return std::nullopt;
  const double lo = std::max(r1->lo, r2->lo);
  const double hi = std::min(r1->hi, r2->hi);
  if (hi <= lo) return std::nullopt;
  return seg.a + (0.5 * (lo + hi)) * d;
}

std::optional<Point> arc_in_reflex_complement(const Arc& arc, double phi, double tol) {
  const Point e_plus = unit(phi);
  const Point e_minus = unit(-phi);
  const LinearRange range{std::min(arc.t0, arc.t1), std::max(arc.t0, arc.t1)};
  // cross(e+, c + R u(t)) = cross(e+, c) + R sin(t - phi)
  auto part = arc_positive(cross(e_plus, arc.center), arc.radius, phi, tol, {range});
  // cross(c + R u(t), e-) = cross(c, e-) - R sin(t + phi) = cross(c, e-) + R sin(t + phi + pi)
  part = arc_positive(cross(arc.center, e_minus), arc.radius, -phi - kPi, tol, part);
  if (part.empty()) return std::nullopt;
  return arc.at(0.5 * (part.front().lo + part.front().hi));
}

// PW: the closed wedge is the convex cone {cross(e0, p) >= 0, cross(p, e1) >= 0}.
std::optional<Point> piece_outside_convex_wedge(const BoundaryPiece& piece, double alpha,
                                                double tol) {
  const Point e0{1.0, 0.0};
  const Point e1 = unit(kPi / alpha);
  const auto g = [&](Point p) { return std::min(cross(e0, p), cross(p, e1)); };
  if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
    for (Point p : {seg->a, seg->b}) {
      if (g(p) < -tol) return p;
    }
    return std::nullopt;
  }
  const Arc& arc = std::get<Arc>(piece.curve);
  std::vector<double> candidates{arc.t0, arc.t1};
  // Minima of cross(e0, u(t)) = sin t at t = -pi/2; of cross(u(t), e1) = sin(pi/alpha - t)
  // at t = pi/alpha + pi/2.
  for (double base : {-kPi / 2, kPi / alpha + kPi / 2}) {
    for (int k = -2; k <= 2; ++k) {
      const double t = base + k * kTwoPi;
      if (t > std::min(arc.t0, arc.t1) && t < std::max(arc.t0, arc.t1)) candidates.push_back(t);
    }
  }
  for (double t : candidates) {
    if (g(arc.at(t)) < -tol) return arc.at(t);
  }
  return std::nullopt;
}

}  // namespace

ContainmentReport contains_in_wedge(const Domain& frame_domain, const WedgeFamily& wedge) {
  const double scale = length_scale(frame_domain);
  const double tol = 1e-11 * scale;
  const BoundaryCurve curve = boundary(frame_domain);

  if (wedge.kind == WedgeKind::PayneWeinberger) {
    const double alpha = WedgeFamily::payne_weinberger(wedge.param).param;
    for (const BoundaryPiece& piece : curve.pieces) {
      if (piece.slit) continue;
      if (auto v = piece_outside_convex_wedge(piece, alpha, tol)) {
        return {false, v, "boundary leaves the closed wedge " + wedge.describe()};
      }
    }
    return {true, std::nullopt, ""};
  }

  const double beta = WedgeFamily::reflex(wedge.param).param;
  const double phi = kPi / beta;
  if (beta > 1.0) {
    const Point e_plus = unit(phi);
    const Point e_minus = unit(-phi);
    for (const BoundaryPiece& piece : curve.pieces) {
      if (piece.slit) continue;
      std::optional<Point> v;
      if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
        v = segment_in_reflex_complement(*seg, e_plus, e_minus, tol);
      } else {
        v = arc_in_reflex_complement(std::get<Arc>(piece.curve), phi, tol);
      }
      if (v) return {false, v, "boundary enters the excluded sector of " + wedge.describe()};
    }
    return {true, std::nullopt, ""};
  }

  // beta == 1: the excluded set is the negative x-axis; every point of it that
  // lies in the open shape must be covered by a slit along that axis.
  std::vector<Interval> covered;
  for (const Chain& chain : frame_domain.slits()) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const Point a = chain[i];
      const Point b = chain[i + 1];
      const bool on_axis = std::fabs(a.y) <= tol && std::fabs(b.y) <= tol && a.x <= tol && b.x <= tol;
      if (on_axis) covered.push_back({std::min(-a.x, -b.x), std::max(-a.x, -b.x)});
    }
  }
  std::sort(covered.begin(), covered.end(), [](Interval a, Interval b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (Interval c : covered) {
    if (!merged.empty() && c.lo <= merged.back().hi + tol) {
      merged.back().hi = std::max(merged.back().hi, c.hi);
    } else {
      merged.push_back(c);
    }
  }
  for (const Interval& need : ray_profile(frame_domain, kPi)) {
    double reach = need.lo;
    for (const Interval& c : merged) {
      if (c.lo <= reach + tol && c.hi > reach) reach = c.hi;
    }
    if (reach < need.hi - tol) {
      const double r = std::max(reach, need.lo) + 0.5 * std::min(need.hi - reach, need.hi - need.lo);
      return {false, Point{-r, 0.0}, "domain meets the cut ray theta = pi of " + wedge.describe()};
    }
  }
  return {true, std::nullopt, ""};
}

}  // namespace wedgebound
