#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "wedgebound/geometry.hpp"
#include "wedgebound/kernels.hpp"

namespace wedgebound {

enum class QuadratureMethod { Auto, ClosedForm, PolarAdaptive, TriangleGauss, MonteCarlo };

std::string to_string(QuadratureMethod method);

struct QuadratureResult {
  double value = 0.0;
  double abs_err = 0.0;
  QuadratureMethod method = QuadratureMethod::Auto;
  /// Integrand evaluations (rays, quadrature points, or Monte Carlo samples).
  std::size_t samples = 0;
};

/// Weighted area moment of a domain in the wedge frame:
///   S_alpha: int_D r^(2 alpha + 1) sin^2(alpha theta) dr dtheta
///   R_beta:  int_D r^(beta + 1) cos^2(beta theta / 2) dr dtheta
/// Auto tries closed form, then polar quadrature (star-shaped domains), then
/// the triangle rule (polygons). Throws ContainmentError when the domain is
/// not inside the wedge.
QuadratureResult moment(const Domain& frame_domain, const WedgeFamily& family,
                        QuadratureMethod method = QuadratureMethod::Auto);

/// `moment` without the containment check, for exploratory (forced) bounds.
/// Angles are then taken in (-pi, pi] instead of the wedge's range.
QuadratureResult moment_unchecked(const Domain& frame_domain, const WedgeFamily& family,
                                  QuadratureMethod method = QuadratureMethod::Auto);

QuadratureResult moment_pw(const Domain& frame_domain, double alpha,
                           QuadratureMethod method = QuadratureMethod::Auto);
QuadratureResult moment_reflex(const Domain& frame_domain, double beta,
                               QuadratureMethod method = QuadratureMethod::Auto);

/// int_{boundary} r^beta cos^2(beta theta / 2) ds over the outer boundary and
/// both sides of every slit.
QuadratureResult boundary_moment(const Domain& frame_domain, double beta);

/// Rejection-sampling estimate of `moment` in the bounding box; abs_err is
/// three standard errors. Samples are drawn in fixed chunks with per-chunk
/// seeds, so the result does not depend on the execution policy.
QuadratureResult moment_mc_oracle(const Domain& frame_domain, const WedgeFamily& family,
                                  std::size_t n, std::uint64_t seed,
                                  kernels::Execution execution = kernels::Execution::Parallel);

/// Cartesian integrand r^p w(theta) of the moment for `family` at point p.
double moment_integrand(const WedgeFamily& family, Point p);

}  // namespace wedgebound
