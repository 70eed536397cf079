#include "wedgebound/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_map>

#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double segment_distance(Point p, Point a, Point b) {
  const Point e = b - a;
  const double len2 = dot(e, e);
  const double t = len2 > 0 ? std::clamp(dot(p - a, e) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + t * e));
}

Point snap(Point p, const Arc& circle) {
  const Point rel = p - circle.center;
  return circle.center + (circle.radius / norm(rel)) * rel;
}

// Bowyer-Watson Delaunay triangulation. Brute-force point location is fine
// for coarse meshes; fine levels come from refinement.
class Delaunay {
 public:
  explicit Delaunay(const std::vector<Point>& pts) : pts_(pts) {
    Point lo = pts.front(), hi = pts.front();
    for (Point p : pts) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const Point c = 0.5 * (lo + hi);
    const double m = 20 * std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
    scale_ = std::max(hi.x - lo.x, hi.y - lo.y);
    n_ = static_cast<int>(pts.size());
    pts_.push_back(c + m * Point{-1.7, -1});
    pts_.push_back(c + m * Point{1.7, -1});
    pts_.push_back(c + m * Point{0, 2});
    add({n_, n_ + 1, n_ + 2});
    for (int i = 0; i < n_; ++i) insert(i);
  }

  std::vector<Triangle> triangles() const {
    std::vector<Triangle> out;
    for (const Tri& t : tris_) {
      if (t.alive && t.v[0] < n_ && t.v[1] < n_ && t.v[2] < n_) out.push_back(t.v);
    }
    return out;
  }

 private:
  struct Tri {
    Triangle v;
    Point cc;
    double r2;
    bool alive;
  };

  double orient(int a, int b, Point p) const { return cross(pts_[b] - pts_[a], p - pts_[a]); }

  void add(Triangle v) {
    const Point a = pts_[v[0]];
    const Point b = pts_[v[1]] - a;
    const Point c = pts_[v[2]] - a;
    const double d = 2 * cross(b, c);
    const double b2 = dot(b, b), c2 = dot(c, c);
    const Point center{(c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d};
    tris_.push_back({v, a + center, dot(center, center), true});
  }

  void insert(int i) {
    const Point p = pts_[i];
    const double eps = 1e-13 * scale_ * scale_;
    int home = -1;
    for (std::size_t t = 0; t < tris_.size() && home < 0; ++t) {
      const Tri& tr = tris_[t];
      if (!tr.alive) continue;
      if (orient(tr.v[0], tr.v[1], p) >= -eps && orient(tr.v[1], tr.v[2], p) >= -eps &&
          orient(tr.v[2], tr.v[0], p) >= -eps) {
        home = static_cast<int>(t);
      }
    }
    if (home < 0) throw MeshError("Delaunay insertion: point outside the triangulation");

    std::vector<int> bad;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Tri& tr = tris_[t];
      if (!tr.alive) continue;
      const Point d = p - tr.cc;
      if (static_cast<int>(t) == home || dot(d, d) < tr.r2 * (1 - 1e-12)) bad.push_back(static_cast<int>(t));
    }

    // Keep the cavity connected to `home` and star-shaped from p.
    for (;;) {
      std::unordered_map<std::uint64_t, std::vector<int>> owners;
      for (int t : bad) {
        for (int k = 0; k < 3; ++k) {
          owners[edge_key(tris_[t].v[k], tris_[t].v[(k + 1) % 3])].push_back(t);
        }
      }
      std::vector<int> reach{home};
      std::vector<char> seen(tris_.size(), 0);
      seen[home] = 1;
      for (std::size_t q = 0; q < reach.size(); ++q) {
        const Tri& tr = tris_[reach[q]];
        for (int k = 0; k < 3; ++k) {
          for (int u : owners[edge_key(tr.v[k], tr.v[(k + 1) % 3])]) {
            if (!seen[u]) {
              seen[u] = 1;
              reach.push_back(u);
            }
          }
        }
      }
      bad = reach;
      int drop = -1;
      for (int t : bad) {
        const Tri& tr = tris_[t];
        for (int k = 0; k < 3 && drop < 0; ++k) {
          const int a = tr.v[k], b = tr.v[(k + 1) % 3];
          if (owners[edge_key(a, b)].size() == 1 && orient(a, b, p) <= eps && t != home) drop = t;
        }
        if (drop >= 0) break;
      }
      if (drop < 0) break;
      bad.erase(std::find(bad.begin(), bad.end(), drop));
    }

    std::unordered_map<std::uint64_t, int> count;
    for (int t : bad) {
      for (int k = 0; k < 3; ++k) ++count[edge_key(tris_[t].v[k], tris_[t].v[(k + 1) % 3])];
    }
    std::vector<Triangle> fresh;
    for (int t : bad) {
      const Triangle v = tris_[t].v;
      for (int k = 0; k < 3; ++k) {
        const int a = v[k], b = v[(k + 1) % 3];
        if (count[edge_key(a, b)] == 1 && std::fabs(orient(a, b, p)) > eps) fresh.push_back({a, b, i});
      }
      tris_[t].alive = false;
    }
    for (const Triangle& v : fresh) add(v);
  }

  std::vector<Point> pts_;
  std::vector<Tri> tris_;
  int n_ = 0;
  double scale_ = 1.0;
};

class PointPool {
 public:
  PointPool(double tol, double scale) : tol_(tol), scale_(scale) {}

  double scale() const { return scale_; }

  int add(Point p) {
    for (std::size_t i = 0; i < boundary_; ++i) {
      if (norm(pts[i] - p) <= tol_) return static_cast<int>(i);
    }
    pts.push_back(p);
    ++boundary_;
    return static_cast<int>(pts.size() - 1);
  }

  std::vector<Point> pts;

 private:
  double tol_;
  double scale_;
  std::size_t boundary_ = 0;
};

void collect_constraints(const Domain& domain, double h, PointPool& pool,
                         std::vector<ConstrainedEdge>& edges) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  const auto add_edge = [&](int a, int b, bool slit, std::optional<Arc> circle) {
    if (a == b) return;
    const auto key = edge_key(a, b);
    if (index.contains(key)) return;
    index[key] = edges.size();
    edges.push_back({a, b, slit, circle});
  };
  const BoundaryCurve curve = boundary(domain);
  // Endpoints of every piece. A slit may end in the middle of an outer edge;
  // that edge must be split there or the triangulation cannot contain it.
  std::vector<Point> marks;
  for (const BoundaryPiece& piece : curve.pieces) {
    marks.push_back(piece.at(0.0));
    marks.push_back(piece.at(piece.length()));
  }
  const double tol = 1e-9 * std::max(1.0, pool.scale());
  const auto chain = [&](const std::vector<std::pair<double, Point>>& stops, const auto& point_at, bool slit, std::optional<Arc> circle) {
    int prev = pool.add(stops.front().second);
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
      const Point a = stops[s].second;
      const Point b = stops[s + 1].second;
      const double t0 = stops[s].first;
      const double t1 = stops[s + 1].first;
      const double len = circle ? circle->radius * std::fabs(t1 - t0) : norm(b - a);
      // Arcs also get at least one chord per eighth of a turn.
      const int min_parts =
          circle ? std::max(1, static_cast<int>(std::ceil(std::fabs(t1 - t0) / (kPi / 4) - 1e-9))) : 1;
      const int n = std::max(min_parts, static_cast<int>(std::ceil(len / h - 1e-9)));
      for (int k = 1; k <= n; ++k) {
        const int next = pool.add(k == n ? b : point_at(t0 + (t1 - t0) * k / n));
        add_edge(prev, next, slit, circle);
        prev = next;
      }
    }
  };
  for (const BoundaryPiece& piece : curve.pieces) {
    if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
      const Point d = seg->b - seg->a;
      const double len2 = dot(d, d);
      std::vector<std::pair<double, Point>> stops{{0.0, seg->a}, {1.0, seg->b}};
      for (Point m : marks) {
        const double t = dot(m - seg->a, d) / len2;
        if (t * std::sqrt(len2) > tol && (1 - t) * std::sqrt(len2) > tol &&
            std::fabs(cross(d, m - seg->a)) / std::sqrt(len2) <= tol) {
          stops.push_back({t, m});
        }
      }
      std::sort(stops.begin(), stops.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      chain(stops, [&](double t) { return seg->a + t * d; }, piece.slit, std::nullopt);
      continue;
    }
    const Arc& arc = std::get<Arc>(piece.curve);
    const double sweep = arc.t1 - arc.t0;
    std::vector<std::pair<double, Point>> stops{{arc.t0, arc.at(arc.t0)}, {arc.t1, arc.at(arc.t1)}};
    for (Point m : marks) {
      if (std::fabs(norm(m - arc.center) - arc.radius) > tol) continue;
      // Angle of m measured from t0 in the direction of the sweep.
      double u = std::remainder(polar_angle(m - arc.center) - arc.t0, 2 * kPi);
      if (sweep > 0 && u < 0) u += 2 * kPi;
      if (sweep < 0 && u > 0) u -= 2 * kPi;
      if (std::fabs(u) * arc.radius > tol && std::fabs(sweep - u) * arc.radius > tol &&
          std::fabs(u) < std::fabs(sweep)) {
        stops.push_back({arc.t0 + u, m});
      }
    }
    std::sort(stops.begin(), stops.end(), [&](const auto& x, const auto& y) {
      return sweep > 0 ? x.first < y.first : x.first > y.first;
    });
    chain(stops, [&](double t) { return arc.at(t); }, false, arc);
  }
}

}  // namespace

double SlitMesh::area() const {
  double total = 0.0;
  for (const Triangle& t : elements) {
    total += cross(nodes[t[1]] - nodes[t[0]], nodes[t[2]] - nodes[t[0]]) / 2;
  }
  return total;
}

std::vector<char> SlitMesh::dirichlet_mask() const {
  std::vector<char> mask(nodes.size(), 0);
  for (int i : dirichlet_nodes) mask[i] = 1;
  return mask;
}

SlitMesh build_slit_mesh(const Domain& domain, double h) {
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("mesh size must be positive");
  const auto [lo, hi] = bounding_box(domain);
  const double scale = std::max(hi.x - lo.x, hi.y - lo.y);
  if (h > scale) h = scale;
  if (scale / h > 4000) throw MeshError("mesh size too small for the coarse mesher");

  PointPool pool(1e-10 * scale, scale);
  std::vector<ConstrainedEdge> edges;
  collect_constraints(domain, h, pool, edges);

  // Square lattice, kept at least h/2 away from every constraint.
  const int nx = static_cast<int>(std::floor((hi.x - lo.x) / h + 1e-9));
  const int ny = static_cast<int>(std::floor((hi.y - lo.y) / h + 1e-9));
  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const Point p = lo + Point{i * h, j * h};
      if (!inside(domain, p)) continue;
      bool clear = true;
      for (const ConstrainedEdge& e : edges) {
        if (segment_distance(p, pool.pts[e.a], pool.pts[e.b]) < 0.5 * h * (1 - 1e-9)) {
          clear = false;
          break;
        }
      }
      if (clear) pool.pts.push_back(p);
    }
  }
  std::vector<Point> pts = pool.pts;

  std::vector<Triangle> tris;
  for (int round = 0;; ++round) {
    tris = Delaunay(pts).triangles();
    std::unordered_map<std::uint64_t, int> present;
    for (const Triangle& t : tris) {
      for (int k = 0; k < 3; ++k) present[edge_key(t[k], t[(k + 1) % 3])] = 1;
    }
    std::vector<ConstrainedEdge> next;
    bool missing = false;
    for (const ConstrainedEdge& e : edges) {
      if (present.contains(edge_key(e.a, e.b))) {
        next.push_back(e);
        continue;
      }
      missing = true;
      Point m = 0.5 * (pts[e.a] + pts[e.b]);
      if (e.circle) m = snap(m, *e.circle);
      pts.push_back(m);
      const int mi = static_cast<int>(pts.size() - 1);
      next.push_back({e.a, mi, e.slit, e.circle});
      next.push_back({mi, e.b, e.slit, e.circle});
    }
    edges = std::move(next);
    if (!missing) break;
    if (round >= 16) throw MeshError("could not recover boundary edges in the triangulation");
  }

  SlitMesh mesh;
  std::vector<int> remap(pts.size(), -1);
  for (const Triangle& t : tris) {
    const Point c = (1.0 / 3) * (pts[t[0]] + pts[t[1]] + pts[t[2]]);
    if (!inside(domain, c)) continue;
    Triangle v = t;
    if (cross(pts[v[1]] - pts[v[0]], pts[v[2]] - pts[v[0]]) < 0) std::swap(v[1], v[2]);
    for (int& k : v) {
      if (remap[k] < 0) {
        remap[k] = static_cast<int>(mesh.nodes.size());
        mesh.nodes.push_back(pts[k]);
      }
      k = remap[k];
    }
    mesh.elements.push_back(v);
  }
  if (mesh.elements.empty()) throw MeshError("mesh has no elements");

  std::unordered_map<std::uint64_t, int> uses;
  for (const Triangle& t : mesh.elements) {
    for (int k = 0; k < 3; ++k) ++uses[edge_key(t[k], t[(k + 1) % 3])];
  }
  std::unordered_map<std::uint64_t, int> tagged;
  for (ConstrainedEdge e : edges) {
    if (remap[e.a] < 0 || remap[e.b] < 0) throw MeshError("boundary edge lost while meshing");
    e.a = remap[e.a];
    e.b = remap[e.b];
    if (!uses.contains(edge_key(e.a, e.b))) throw MeshError("boundary edge lost while meshing");
    tagged[edge_key(e.a, e.b)] = 1;
    mesh.curved = mesh.curved || e.circle.has_value();
    mesh.constrained.push_back(e);
  }
  for (const auto& [key, n] : uses) {
    if (n == 1 && !tagged.contains(key)) throw MeshError("mesh boundary does not match the domain");
  }

  std::vector<char> mask(mesh.nodes.size(), 0);
  for (const ConstrainedEdge& e : mesh.constrained) mask[e.a] = mask[e.b] = 1;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) mesh.dirichlet_nodes.push_back(static_cast<int>(i));
  }
  mesh.parents.assign(mesh.nodes.size(), {-1, -1});
  mesh.h = h;
  return mesh;
}

SlitMesh refine(const SlitMesh& mesh) {
  SlitMesh out;
  out.nodes = mesh.nodes;
  out.parents.assign(mesh.nodes.size(), {-1, -1});
  out.h = mesh.h / 2;
  out.curved = mesh.curved;
  std::unordered_map<std::uint64_t, int> mid;
  const auto midpoint = [&](int a, int b) {
    const auto key = edge_key(a, b);
    if (auto it = mid.find(key); it != mid.end()) return it->second;
    const int m = static_cast<int>(out.nodes.size());
    out.nodes.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
    out.parents.push_back({a, b});
    mid[key] = m;
    return m;
  };
  out.elements.reserve(4 * mesh.elements.size());
  for (const Triangle& t : mesh.elements) {
    const int ab = midpoint(t[0], t[1]);
    const int bc = midpoint(t[1], t[2]);
    const int ca = midpoint(t[2], t[0]);
    out.elements.push_back({t[0], ab, ca});
    out.elements.push_back({ab, t[1], bc});
    out.elements.push_back({ca, bc, t[2]});
    out.elements.push_back({ab, bc, ca});
  }
  for (const ConstrainedEdge& e : mesh.constrained) {
    const int m = mid.at(edge_key(e.a, e.b));
    if (e.circle) out.nodes[m] = snap(out.nodes[m], *e.circle);
    out.constrained.push_back({e.a, m, e.slit, e.circle});
    out.constrained.push_back({m, e.b, e.slit, e.circle});
  }
  std::vector<char> mask(out.nodes.size(), 0);
  for (const ConstrainedEdge& e : out.constrained) mask[e.a] = mask[e.b] = 1;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.dirichlet_nodes.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace wedgebound
