#pragma once

#include <optional>
#include <vector>

#include "wedgebound/bounds.hpp"
#include "wedgebound/geometry.hpp"

namespace wedgebound {

struct PoseTrial {
  Pose pose;
  /// Bound value, or empty when the pose violates containment.
  std::optional<double> value;
};

struct PoseSearchResult {
  /// Empty when no feasible pose was found.
  std::optional<BoundReport> best_bound;
  Pose best_pose;
  std::vector<PoseTrial> trace;
  int evaluations = 0;

  bool feasible() const { return best_bound.has_value(); }
};

/// Maximizes the PW or reflex bound over the wedge pose. Seeds (slit
/// endpoints aligned with their slit, vertices, sector apices, centroid, edge
/// midpoints, then a grid times 16 orientations) are evaluated first; the
/// best feasible seeds are refined by Nelder-Mead on (x, y, rotation).
/// Infeasible poses are rejected, never penalized. Deterministic.
/// Nelder-Mead origins are confined to the bounding box grown by one domain
/// scale on each side. For beta < 2 the reflex value is not a valid bound at
/// every pose, so the maximum found can exceed lambda_1.
/// Throws DomainError when budget < 50.
PoseSearchResult optimize_pose(const Domain& domain, const WedgeFamily& family, int budget = 400);

}  // namespace wedgebound
