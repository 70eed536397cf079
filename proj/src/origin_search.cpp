#include "wedgebound/origin_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrientations = 16;

struct Seed {
  Point origin;
  double rotation;
};

class Objective {
 public:
  Objective(const Domain& domain, const WedgeFamily& family) : domain_(domain), family_(family) {}

  std::optional<BoundReport> operator()(const Pose& pose) const {
    try {
      return family_.kind == WedgeKind::Reflex ? reflex_bound(domain_, family_.param, pose)
                                               : pw_bound(domain_, family_.param, pose);
    } catch (const ContainmentError&) {
      return std::nullopt;
    } catch (const NumericalError&) {
      return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

 private:
  const Domain& domain_;
  WedgeFamily family_;
};

// Rotation that puts the wedge bisector along `direction`.
double aligned(const WedgeFamily& family, double direction) {
  return family.kind == WedgeKind::Reflex ? direction : direction - kPi / (2 * family.param);
}

std::vector<Seed> seeds(const Domain& domain, const WedgeFamily& family) {
  std::vector<Seed> out;
  const auto all_orientations = [&](Point p) {
    for (int k = 0; k < kOrientations; ++k) out.push_back({p, -kPi + 2 * kPi * k / kOrientations});
  };

  // Slit endpoints, with the excluded ray (frame angle pi) running along the slit.
  for (const Chain& chain : domain.slits()) {
    for (auto [tip, next] : {std::pair{chain.front(), chain[1]},
                             std::pair{chain.back(), chain[chain.size() - 2]}}) {
      out.push_back({tip, polar_angle(next - tip) - kPi});
    }
  }
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CircularSector>) {
          out.push_back({s.vertex, aligned(family, s.bisector)});
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          out.push_back({s.center, aligned(family, s.bisector)});
        } else if constexpr (std::is_same_v<T, Disc>) {
          out.push_back({s.center, 0.0});
        } else {
          const auto& v = s.vertices;
          const std::size_t n = v.size();
          for (std::size_t i = 0; i < n; ++i) {
            const Point prev = v[(i + n - 1) % n], cur = v[i], next = v[(i + 1) % n];
            // Interior bisector of a counterclockwise polygon's corner.
            const Point a = (1 / norm(next - cur)) * (next - cur);
            const Point b = (1 / norm(prev - cur)) * (prev - cur);
            double dir = polar_angle(a + b);
            if (cross(a, b) < 0) dir += kPi;
            out.push_back({cur, aligned(family, dir)});
          }
          for (std::size_t i = 0; i < n; ++i) {
            const Point e = v[(i + 1) % n] - v[i];
            out.push_back({0.5 * (v[i] + v[(i + 1) % n]), aligned(family, polar_angle(Point{-e.y, e.x}))});
          }
        }
      },
      domain.shape());

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          Point c{};
          double a = 0;
          const auto& v = s.vertices;
          for (std::size_t i = 0; i < v.size(); ++i) {
            const double w = cross(v[i], v[(i + 1) % v.size()]);
            a += w;
            c = c + (w / 3) * (v[i] + v[(i + 1) % v.size()]);
          }
          all_orientations((1 / a) * c);
          for (Point p : v) all_orientations(p);
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          all_orientations(s.vertex);
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          all_orientations(s.center);
        } else {
          all_orientations(s.center);
        }
      },
      domain.shape());
  for (const Chain& chain : domain.slits()) {
    for (Point p : chain) all_orientations(p);
  }

  const auto [lo, hi] = bounding_box(domain);
  constexpr int kGrid = 5;
  for (int j = 0; j < kGrid; ++j) {
    for (int i = 0; i < kGrid; ++i) {
      all_orientations(lo + Point{(hi.x - lo.x) * i / (kGrid - 1), (hi.y - lo.y) * j / (kGrid - 1)});
    }
  }
  return out;
}

}  // namespace

PoseSearchResult optimize_pose(const Domain& domain, const WedgeFamily& family_in, int budget) {
  if (budget < 50) throw DomainError("pose search budget must be at least 50");
  const WedgeFamily family = family_in.kind == WedgeKind::Reflex
                                 ? WedgeFamily::reflex(family_in.param)
                                 : WedgeFamily::payne_weinberger(family_in.param);
  const Objective objective(domain, family);
  PoseSearchResult result;

  const auto record = [&](const Pose& pose, const std::optional<BoundReport>& report) {
    result.trace.push_back({pose, report ? std::optional<double>(report->value) : std::nullopt});
    ++result.evaluations;
    if (report && (!result.best_bound || report->value > result.best_bound->value)) {
      result.best_bound = report;
      result.best_pose = pose;
    }
  };

  std::vector<Seed> seed_list = seeds(domain, family);
  const int seed_budget = std::max(1, budget * 3 / 5);
  if (static_cast<int>(seed_list.size()) > seed_budget) seed_list.resize(seed_budget);
  std::vector<std::optional<BoundReport>> seed_reports(seed_list.size());
  const long count = static_cast<long>(seed_list.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    seed_reports[i] = objective(Pose(seed_list[i].origin, seed_list[i].rotation));
  }
  std::vector<std::pair<double, Pose>> feasible;
  for (std::size_t i = 0; i < seed_list.size(); ++i) {
    const Pose pose(seed_list[i].origin, seed_list[i].rotation);
    record(pose, seed_reports[i]);
    if (seed_reports[i]) feasible.push_back({seed_reports[i]->value, pose});
  }
  if (feasible.empty()) return result;
  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  // Nelder-Mead from the best distinct seeds, splitting the remaining budget.
  const auto [lo, hi] = bounding_box(domain);
  const double scale = std::max(hi.x - lo.x, hi.y - lo.y);
  using Vec = std::array<double, 3>;
  const auto to_pose = [](const Vec& x) { return Pose({x[0], x[1]}, x[2]); };
  // Origins stay within one domain scale of the bounding box. For beta < 2
  // the reflex formula grows without bound as the domain slides out along a
  // wedge edge, so an unconfined search only chases that divergence.
  const auto confined = [&](const Vec& x) {
    return x[0] >= lo.x - scale && x[0] <= hi.x + scale && x[1] >= lo.y - scale && x[1] <= hi.y + scale;
  };
  const auto score = [&](const Vec& x) {
    const Pose pose = to_pose(x);
    const auto report = confined(x) ? objective(pose) : std::nullopt;
    record(pose, report);
    return report ? -report->value : std::numeric_limits<double>::infinity();
  };

  std::vector<Pose> starts;
  for (const auto& [value, pose] : feasible) {
    const bool distinct = std::none_of(starts.begin(), starts.end(), [&](const Pose& s) {
      return norm(s.origin - pose.origin) < 1e-9 * scale &&
             std::fabs(wrap_angle(s.rotation - pose.rotation)) < 1e-9;
    });
    if (distinct) starts.push_back(pose);
    if (starts.size() == 3) break;
  }
  const int per_start = (budget - result.evaluations) / static_cast<int>(starts.size());
  for (const Pose& start : starts) {
    const int stop = result.evaluations + per_start;
    if (per_start < 4) break;
    std::array<Vec, 4> simplex;
    std::array<double, 4> f;
    simplex[0] = {start.origin.x, start.origin.y, start.rotation};
    const Vec step{0.05 * scale, 0.05 * scale, 0.1};
    f[0] = -objective(start).value_or(BoundReport{}).value;
    for (int k = 0; k < 3; ++k) {
      simplex[k + 1] = simplex[0];
      simplex[k + 1][k] += step[k];
      f[k + 1] = score(simplex[k + 1]);
    }
    while (result.evaluations + 2 <= stop) {
      std::array<int, 4> order{0, 1, 2, 3};
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
      const int best = order[0], worst = order[3], second = order[2];
      double size = 0;
      for (int k = 1; k < 4; ++k) {
        size = std::max({size, std::hypot(simplex[order[k]][0] - simplex[best][0],
                                          simplex[order[k]][1] - simplex[best][1]) / scale,
                         std::fabs(simplex[order[k]][2] - simplex[best][2])});
      }
      if (size < 1e-10) break;
      Vec centroid{0, 0, 0};
      for (int k = 0; k < 3; ++k) {
        for (int d = 0; d < 3; ++d) centroid[d] += simplex[order[k]][d] / 3;
      }
      const auto along = [&](double t) {
        Vec x;
        for (int d = 0; d < 3; ++d) x[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
        return x;
      };
      const Vec xr = along(-1);
      const double fr = score(xr);
      if (fr < f[best]) {
        const Vec xe = along(-2);
        const double fe = score(xe);
        if (fe < fr) {
          simplex[worst] = xe, f[worst] = fe;
        } else {
          simplex[worst] = xr, f[worst] = fr;
        }
      } else if (fr < f[second]) {
        simplex[worst] = xr, f[worst] = fr;
      } else {
        const Vec xc = fr < f[worst] ? along(-0.5) : along(0.5);
        const double fc = score(xc);
        if (fc < std::min(fr, f[worst])) {
          simplex[worst] = xc, f[worst] = fc;
        } else {
          for (int k = 0; k < 4; ++k) {
            if (k == best || result.evaluations >= stop) continue;
            for (int d = 0; d < 3; ++d) simplex[k][d] = 0.5 * (simplex[k][d] + simplex[best][d]);
            f[k] = score(simplex[k]);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace wedgebound
