#pragma once

#include <array>
#include <optional>
#include <vector>

#include "wedgebound/geometry.hpp"
#include "wedgebound/triangulate.hpp"

namespace wedgebound {

/// Edge that must stay an element edge: part of the outer boundary or of a
/// slit. Edges discretizing a circle carry the circle so refinement can put
/// new nodes back on it.
struct ConstrainedEdge {
  int a = 0;
  int b = 0;
  bool slit = false;
  std::optional<Arc> circle;
};

/// Conforming P1 triangulation of a membrane. Slits are interior element
/// edges whose nodes are Dirichlet nodes; the two sides share those nodes.
struct SlitMesh {
  std::vector<Point> nodes;
  std::vector<Triangle> elements;
  /// Sorted indices of nodes on the outer boundary or on a slit.
  std::vector<int> dirichlet_nodes;
  /// Boundary spacing the mesh was built for (halved by each refinement).
  double h = 0.0;
  std::vector<ConstrainedEdge> constrained;
  /// For nodes created by refinement, the two endpoints of the split edge;
  /// {-1, -1} for nodes inherited from the coarser mesh.
  std::vector<std::array<int, 2>> parents;
  /// True when some boundary is an inscribed polygon of a circle.
  bool curved = false;

  double area() const;
  std::vector<char> dirichlet_mask() const;
};

/// Delaunay mesh with boundary spacing h: boundary and slits are subdivided,
/// interior points come from a square lattice of spacing h, and constraint
/// edges lost by the triangulation are split until all are present. A square
/// of side 2 with h = 0.25 gives the 8 x 8 grid (81 nodes).
/// Throws DomainError for h <= 0, MeshError when the mesh cannot be made
/// conforming.
SlitMesh build_slit_mesh(const Domain& domain, double h);

/// Uniform red refinement: every triangle is split into four through its edge
/// midpoints; midpoints of curved boundary edges are moved onto the circle.
SlitMesh refine(const SlitMesh& mesh);

}  // namespace wedgebound
