#pragma once

#include <string>
#include <vector>

#include "wedgebound/geometry.hpp"
#include "wedgebound/kernels.hpp"
#include "wedgebound/mesh.hpp"

namespace wedgebound {

struct FemLevel {
  double h = 0.0;
  double lambda = 0.0;
  int nodes = 0;
  int elements = 0;
  /// Inverse-iteration steps and total conjugate-gradient steps.
  int outer_iterations = 0;
  int cg_iterations = 0;
};

struct EigenEstimate {
  std::vector<FemLevel> levels;
  double extrapolated = 0.0;
  /// log2 of the ratio of successive level differences, unclamped; NaN when
  /// the last three levels are not monotone.
  double observed_order = 0.0;
  double error_estimate = 0.0;
  /// Rayleigh quotient of the finest discrete eigenvector: an upper bound on
  /// lambda_1 of the meshed domain, hence of the domain itself (inscribed).
  double upper_bound = 0.0;
  SlitMesh mesh;
  /// Finest-level eigenvector, M-normalized, positive in the interior.
  std::vector<double> eigenvector;
  /// Set when curved boundaries were replaced by inscribed polygons.
  std::string geometry_note;
};

struct FemOptions {
  int levels = 3;
  double cg_tolerance = 1e-10;
  int max_outer_iterations = 10'000;
  kernels::Execution execution = kernels::Execution::Parallel;
};

/// Smallest Dirichlet eigenvalue by P1 finite elements on the meshes h0,
/// h0/2, ..., with Richardson extrapolation over the last three levels.
/// Throws NumericalError when the iteration does not converge.
EigenEstimate lambda1_fem(const Domain& domain, double h0, const FemOptions& options = {});

/// Exact lambda_1 for discs, sectors (including the cut disc), disc with a
/// radial slit from the center, and annular sectors. Throws DomainError
/// otherwise.
double lambda1_closed(const Domain& domain);

/// Dirichlet energy over L2 norm of the P1 interpolant of `values`.
/// Throws DomainError when values do not vanish on Dirichlet nodes or are 0.
double rayleigh_quotient(const SlitMesh& mesh, const std::vector<double>& values);

/// Global P1 stiffness and consistent mass matrices over the free nodes;
/// `free_index` maps node -> row (-1 for Dirichlet nodes).
struct FemSystem {
  kernels::CsrMatrix stiffness;
  kernels::CsrMatrix mass;
  std::vector<int> free_index;
  std::vector<int> free_nodes;
};
FemSystem assemble(const SlitMesh& mesh);

}  // namespace wedgebound
