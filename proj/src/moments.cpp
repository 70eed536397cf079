#include "wedgebound/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "wedgebound/detail/adaptive.hpp"
#include "wedgebound/errors.hpp"
#include "wedgebound/triangulate.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kRelTol = 1e-11;

// The integrand r^(q-1) w(theta) dx dy = r^q w(theta) dr dtheta.
struct Weight {
  WedgeKind kind;
  double param;

  double q() const { return kind == WedgeKind::Reflex ? param + 1 : 2 * param + 1; }

  double angular(double theta) const {
    if (kind == WedgeKind::Reflex) {
      const double c = std::cos(param * theta / 2);
      return c * c;
    }
    const double s = std::sin(param * theta);
    return s * s;
  }

  double antiderivative(double theta) const {
    if (kind == WedgeKind::Reflex) return theta / 2 + std::sin(param * theta) / (2 * param);
    return theta / 2 - std::sin(2 * param * theta) / (4 * param);
  }

  double radial(double r0, double r1) const {
    const double e = q() + 1;
    return (std::pow(r1, e) - std::pow(r0, e)) / e;
  }
};

Weight weight_of(const WedgeFamily& family) { return {family.kind, family.param}; }

WedgeFamily validated(const WedgeFamily& family) {
  return family.kind == WedgeKind::Reflex ? WedgeFamily::reflex(family.param)
                                          : WedgeFamily::payne_weinberger(family.param);
}

// Shifts [t0, t1] by a multiple of 2 pi into [lo, hi]; nullopt when impossible.
std::optional<std::pair<double, double>> fit_range(double t0, double t1, double lo, double hi) {
  const double slack = 1e-12;
  for (int k = -2; k <= 2; ++k) {
    const double a = t0 + k * kTwoPi;
    const double b = t1 + k * kTwoPi;
    if (a >= lo - slack && b <= hi + slack) return std::pair{std::max(a, lo), std::min(b, hi)};
  }
  return std::nullopt;
}

// Angular range and radii of a shape whose polar description about the
// origin is a product set, or nullopt.
struct PolarBox {
  double r0, r1, t0, t1;
};

std::optional<PolarBox> polar_box(const Domain& d, const WedgeFamily& family) {
  const double lo = family.lower_angle();
  const double hi = family.upper_angle();
  const auto make = [&](Point c, double r0, double r1, double t0,
                        double t1) -> std::optional<PolarBox> {
    if (norm(c) > 1e-13 * r1) return std::nullopt;
    const auto range = fit_range(t0, t1, lo, hi);
    if (!range) return std::nullopt;
    return PolarBox{r0, r1, range->first, range->second};
  };
  if (const auto* s = std::get_if<Disc>(&d.shape())) {
    return make(s->center, 0.0, s->radius, -kPi, kPi);
  }
  if (const auto* s = std::get_if<CircularSector>(&d.shape())) {
    return make(s->vertex, 0.0, s->radius, s->bisector - s->aperture / 2,
                s->bisector + s->aperture / 2);
  }
  if (const auto* s = std::get_if<AnnularSector>(&d.shape())) {
    return make(s->center, s->rho1, s->rho2, s->bisector - s->aperture / 2,
                s->bisector + s->aperture / 2);
  }
  return std::nullopt;
}

std::optional<QuadratureResult> closed_form(const Domain& d, const WedgeFamily& family) {
  const auto box = polar_box(d, family);
  if (!box) return std::nullopt;
  const Weight w = weight_of(family);
  const double value =
      w.radial(box->r0, box->r1) * (w.antiderivative(box->t1) - w.antiderivative(box->t0));
  return QuadratureResult{std::max(value, 0.0), 0.0, QuadratureMethod::ClosedForm, 0};
}

// Polar ------------------------------------------------------------------

std::vector<double> polar_cuts(const Domain& d, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  std::vector<double> extra = profile_breakpoints(d);
  // Circles through the origin: the profile switches on along the tangent.
  for (const BoundaryPiece& piece : boundary(d).pieces) {
    if (const auto* arc = std::get_if<Arc>(&piece.curve)) {
      const double dc = norm(arc->center);
      if (dc > 0 && std::fabs(dc - arc->radius) <= 1e-12 * arc->radius) {
        extra.push_back(wrap_angle(polar_angle(arc->center) + kPi / 2));
        extra.push_back(wrap_angle(polar_angle(arc->center) - kPi / 2));
      }
    }
  }
  for (double t : extra) {
    for (int k = -1; k <= 1; ++k) {
      const double s = t + k * kTwoPi;
      if (s > lo && s < hi) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());
  return cuts;
}

QuadratureResult polar_adaptive(const Domain& d, const WedgeFamily& family, bool contained) {
  const Weight w = weight_of(family);
  const RayProfiler profile(d);
  const auto f = [&](double theta) {
    double radial = 0.0;
    for (const Interval& iv : profile(theta)) radial += w.radial(iv.lo, iv.hi);
    return w.angular(theta) * radial;
  };
  const std::vector<double> cuts = contained
                                       ? polar_cuts(d, family.lower_angle(), family.upper_angle())
                                       : polar_cuts(d, -kPi, kPi);

  // Coarse pass fixes the absolute tolerance, keeping the method scale invariant.
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    constexpr int kPanels = 16;
    const double h = (cuts[i + 1] - cuts[i]) / kPanels;
    for (int k = 0; k < kPanels; ++k) coarse += h * std::fabs(f(cuts[i] + (k + 0.5) * h));
  }
  const double tol = kRelTol * std::max(coarse, 1e-300);
  const double span = cuts.back() - cuts.front();

  QuadratureResult out{0.0, 0.0, QuadratureMethod::PolarAdaptive, 0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = (cuts[i + 1] - cuts[i]) / span;
    // theta = a + (b - a)(1 - cos(pi u))/2 flattens the square-root onset of
    // the profile at tangent cuts.
    const double a = cuts[i], half = (cuts[i + 1] - cuts[i]) / 2;
    const auto g = [&](double u) {
      return f(a + half * (1 - std::cos(kPi * u))) * half * kPi * std::sin(kPi * u);
    };
    const auto part = detail::panel_simpson(g, 0.0, 1.0, tol * share);
    out.value += part.value;
    out.abs_err += part.error;
    out.samples += part.evaluations;
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

// Triangles ----------------------------------------------------------------

struct Rule {
  double weight, a, b;  // barycentric (a, b, b) and its permutations
};

constexpr std::array<Rule, 3> kDunavant5{{
    {0.225, 1.0 / 3, 1.0 / 3},
    {0.132394152788506, 0.059715871789770, 0.470142064105115},
    {0.125939180544827, 0.797426985353087, 0.101286507323456},
}};

double dunavant(const WedgeFamily& family, Point p0, Point p1, Point p2) {
  const double area = std::fabs(cross(p1 - p0, p2 - p0)) / 2;
  double sum = 0.0;
  const auto eval = [&](double l0, double l1, double l2) {
    return moment_integrand(family, l0 * p0 + l1 * p1 + l2 * p2);
  };
  for (const Rule& r : kDunavant5) {
    if (r.a == r.b) {
      sum += r.weight * eval(r.a, r.a, r.a);
    } else {
      sum += r.weight * (eval(r.a, r.b, r.b) + eval(r.b, r.a, r.b) + eval(r.b, r.b, r.a));
    }
  }
  return area * sum;
}

struct TriangleIntegrator {
  Weight w;
  WedgeFamily family;
  QuadratureResult out{0.0, 0.0, QuadratureMethod::TriangleGauss, 0};

  void smooth(Point p0, Point p1, Point p2, double coarse, double tol, int depth) {
    const Point m01 = 0.5 * (p0 + p1);
    const Point m12 = 0.5 * (p1 + p2);
    const Point m20 = 0.5 * (p2 + p0);
    const std::array<std::array<Point, 3>, 4> kids{{
        {p0, m01, m20}, {m01, p1, m12}, {m20, m12, p2}, {m01, m12, m20}}};
    std::array<double, 4> part{};
    double fine = 0.0;
    for (int i = 0; i < 4; ++i) {
      part[i] = dunavant(family, kids[i][0], kids[i][1], kids[i][2]);
      fine += part[i];
    }
    out.samples += 28;
    const double delta = std::fabs(fine - coarse);
    if (delta <= tol || depth >= 30) {
      out.value += fine;
      out.abs_err += delta;
      return;
    }
    for (int i = 0; i < 4; ++i) smooth(kids[i][0], kids[i][1], kids[i][2], part[i], tol / 4, depth + 1);
  }

  // Triangle (0, a, b): with p = u (a + v (b - a)) the radial factor
  // integrates exactly, leaving a smooth integral in v.
  void radial(Point a, Point b, double tol) {
    const double jac = std::fabs(cross(a, b));
    const double e = w.q() + 1;
    const auto g = [&](double v) {
      const Point p = a + v * (b - a);
      return std::pow(norm(p), w.q() - 1) * w.angular(polar_angle(p));
    };
    const auto part = detail::panel_simpson(g, 0.0, 1.0, tol * e / jac);
    out.value += jac / e * part.value;
    out.abs_err += jac / e * part.error;
    out.samples += part.evaluations;
  }
};

bool contains_origin(Point a, Point b, Point c, double tol) {
  const Point o{};
  const double d0 = cross(b - a, o - a);
  const double d1 = cross(c - b, o - b);
  const double d2 = cross(a - c, o - c);
  return d0 >= -tol && d1 >= -tol && d2 >= -tol;
}

QuadratureResult triangle_gauss(const Domain& d, const WedgeFamily& family) {
  const Polygon* poly = d.polygon();
  if (!poly) throw DomainError("triangle quadrature requires a polygon");
  const std::vector<Point>& v = poly->vertices;
  const auto [lo, hi] = bounding_box(d);
  const double scale = std::max({hi.x - lo.x, hi.y - lo.y, norm(lo), norm(hi)});
  const double eps = 1e-13 * scale * scale;

  struct Piece {
    std::array<Point, 3> p;
    bool at_origin;
  };
  std::vector<Piece> pieces;
  for (const Triangle& t : ear_clip(v)) {
    const Point a = v[t[0]], b = v[t[1]], c = v[t[2]];
    if (!contains_origin(a, b, c, eps)) {
      pieces.push_back({{a, b, c}, false});
      continue;
    }
    for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
      if (std::fabs(cross(p, q)) > eps) pieces.push_back({{Point{}, p, q}, true});
    }
  }

  TriangleIntegrator integ{weight_of(family), family};
  const double total_area = area(d);
  double estimate = 0.0;
  std::vector<double> first(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i].p;
    first[i] = dunavant(family, p[0], p[1], p[2]);
    estimate += std::fabs(first[i]);
  }
  integ.out.samples += 7 * pieces.size();
  const double tol = kRelTol * std::max(estimate, 1e-300);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i].p;
    const double share = std::fabs(cross(p[1] - p[0], p[2] - p[0])) / 2 / total_area;
    if (pieces[i].at_origin) {
      integ.radial(p[1], p[2], tol * share);
    } else {
      integ.smooth(p[0], p[1], p[2], first[i], tol * share, 0);
    }
  }
  integ.out.value = std::max(integ.out.value, 0.0);
  return integ.out;
}

// Boundary ---------------------------------------------------------------

double closest_parameter(const BoundaryPiece& piece) {
  if (const auto* seg = std::get_if<Segment>(&piece.curve)) {
    const Point e = seg->b - seg->a;
    const double len2 = dot(e, e);
    return len2 > 0 ? std::clamp(-dot(seg->a, e) / len2, 0.0, 1.0) : 0.0;
  }
  const Arc& arc = std::get<Arc>(piece.curve);
  if (norm(arc.center) == 0) return 0.5;
  // Nearest point of the full circle lies opposite the center direction.
  const double target = polar_angle(arc.center) + kPi;
  double best = 0.5;
  double best_dist = norm(piece.at(0.5));
  for (int k = -2; k <= 2; ++k) {
    const double s = (target + k * kTwoPi - arc.t0) / (arc.t1 - arc.t0);
    if (s > 0 && s < 1 && norm(piece.at(s)) < best_dist) {
      best = s;
      best_dist = norm(piece.at(s));
    }
  }
  return best;
}

detail::Integral piece_moment(const BoundaryPiece& piece, double beta) {
  const double len = piece.length();
  const Weight w{WedgeKind::Reflex, beta};
  const auto f = [&](double s) {
    const Point p = piece.at(s);
    const double r = norm(p);
    return r == 0 ? 0.0 : len * std::pow(r, beta) * w.angular(polar_angle(p));
  };
  const double r_max = std::max({norm(piece.at(0)), norm(piece.at(0.5)), norm(piece.at(1)), 1e-300});
  const double tol = 1e-12 * len * std::pow(r_max, beta);
  const double split = closest_parameter(piece);
  detail::Integral total;
  for (auto [a, b] : {std::pair{0.0, split}, std::pair{split, 1.0}}) {
    if (b - a <= 0) continue;
    const auto part = detail::panel_simpson(f, a, b, tol / 2, 8);
    total.value += part.value;
    total.error += part.error;
    total.evaluations += part.evaluations;
  }
  return total;
}

}  // namespace

std::string to_string(QuadratureMethod method) {
  switch (method) {
    case QuadratureMethod::Auto: return "auto";
    case QuadratureMethod::ClosedForm: return "closed_form";
    case QuadratureMethod::PolarAdaptive: return "polar_adaptive";
    case QuadratureMethod::TriangleGauss: return "triangle_gauss";
    case QuadratureMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

double moment_integrand(const WedgeFamily& family, Point p) {
  const double r = norm(p);
  if (r == 0) return 0.0;
  const Weight w = weight_of(family);
  return std::pow(r, w.q() - 1) * w.angular(polar_angle(p));
}

namespace {

QuadratureResult evaluate(const Domain& d, const WedgeFamily& family, QuadratureMethod method,
                          bool contained) {
  const auto closed = contained ? closed_form(d, family) : std::nullopt;
  switch (method) {
    case QuadratureMethod::ClosedForm:
      if (closed) return *closed;
      throw DomainError("no closed form for this shape and pose");
    case QuadratureMethod::PolarAdaptive: return polar_adaptive(d, family, contained);
    case QuadratureMethod::TriangleGauss: return triangle_gauss(d, family);
    case QuadratureMethod::MonteCarlo: return moment_mc_oracle(d, family, 1'000'000, 20240601);
    case QuadratureMethod::Auto: break;
  }
  if (closed) return *closed;
  if (is_star_shaped(d)) return polar_adaptive(d, family, contained);
  if (d.is_polygon()) return triangle_gauss(d, family);
  return polar_adaptive(d, family, contained);
}

}  // namespace

QuadratureResult moment(const Domain& frame_domain, const WedgeFamily& family_in,
                        QuadratureMethod method) {
  const WedgeFamily family = validated(family_in);
  const ContainmentReport report = contains_in_wedge(frame_domain, family);
  if (!report.ok) throw ContainmentError(report.reason);
  return evaluate(frame_domain, family, method, true);
}

QuadratureResult moment_unchecked(const Domain& frame_domain, const WedgeFamily& family_in,
                                  QuadratureMethod method) {
  const WedgeFamily family = validated(family_in);
  const bool contained = contains_in_wedge(frame_domain, family).ok;
  return evaluate(frame_domain, family, method, contained);
}

QuadratureResult moment_pw(const Domain& frame_domain, double alpha, QuadratureMethod method) {
  return moment(frame_domain, WedgeFamily::payne_weinberger(alpha), method);
}

QuadratureResult moment_reflex(const Domain& frame_domain, double beta, QuadratureMethod method) {
  return moment(frame_domain, WedgeFamily::reflex(beta), method);
}

QuadratureResult boundary_moment(const Domain& frame_domain, double beta) {
  const WedgeFamily family = WedgeFamily::reflex(beta);
  const Weight w = weight_of(family);
  QuadratureResult out{0.0, 0.0, QuadratureMethod::PolarAdaptive, 0};
  const auto box = polar_box(frame_domain, family);
  if (box) {
    // Arcs contribute r^(beta+1) dA; radial edges contribute the 1-D radial integral.
    const double arcs = (std::pow(box->r1, beta + 1) + std::pow(box->r0, beta + 1)) *
                        (w.antiderivative(box->t1) - w.antiderivative(box->t0));
    double edges = 0.0;
    const bool full = std::holds_alternative<Disc>(frame_domain.shape());
    if (!full) {
      edges = (std::pow(box->r1, beta + 1) - std::pow(box->r0, beta + 1)) / (beta + 1) *
              (w.angular(box->t0) + w.angular(box->t1));
    }
    out.value = arcs + edges;
    out.method = QuadratureMethod::ClosedForm;
  }
  for (const BoundaryPiece& piece : boundary(frame_domain).pieces) {
    if (box && !piece.slit) continue;
    const auto part = piece_moment(piece, beta);
    out.value += part.value;
    out.abs_err += part.error;
    out.samples += part.evaluations;
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

QuadratureResult moment_mc_oracle(const Domain& frame_domain, const WedgeFamily& family_in,
                                  std::size_t n, std::uint64_t seed,
                                  kernels::Execution execution) {
  if (n < 10'000) throw DomainError("Monte Carlo oracle needs at least 1e4 samples");
  const WedgeFamily family = validated(family_in);
  constexpr std::size_t kChunk = 65'536;
  const auto [lo, hi] = bounding_box(frame_domain);
  const double box_area = (hi.x - lo.x) * (hi.y - lo.y);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;

  struct Tally {
    double sum = 0, sum2 = 0;
    std::size_t hits = 0;
  };
  std::vector<Tally> tally(chunks);
  const auto run_chunk = [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
    const std::size_t count = std::min(kChunk, n - c * kChunk);
    Tally t;
    for (std::size_t i = 0; i < count; ++i) {
      const Point p{ux(rng), uy(rng)};
      if (!inside(frame_domain, p)) continue;
      const double f = moment_integrand(family, p);
      t.sum += f;
      t.sum2 += f * f;
      ++t.hits;
    }
    tally[c] = t;
  };
  const auto chunk_count = static_cast<long long>(chunks);
  if (execution == kernels::Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < chunk_count; ++c) run_chunk(static_cast<std::size_t>(c));
  } else {
    for (long long c = 0; c < chunk_count; ++c) run_chunk(static_cast<std::size_t>(c));
  }

  Tally total;
  for (const Tally& t : tally) {
    total.sum += t.sum;
    total.sum2 += t.sum2;
    total.hits += t.hits;
  }
  if (total.hits == 0) throw NumericalError("Monte Carlo oracle: no sample landed in the domain");
  const double nn = static_cast<double>(n);
  const double mean = total.sum / nn;
  const double var = std::max(total.sum2 / nn - mean * mean, 0.0) * nn / (nn - 1);
  return {box_area * mean, 3 * box_area * std::sqrt(var / nn), QuadratureMethod::MonteCarlo, n};
}

}  // namespace wedgebound
