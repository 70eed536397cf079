#pragma once

#include <optional>

namespace wedgebound::special {

/// Orders accepted by the Bessel routines.
inline constexpr double kMaxOrder = 12.0;
/// Largest argument accepted by bessel_j / bessel_y.
inline constexpr double kMaxArgument = 100.0;
/// Below this argument the power series is used, above it the Hankel expansion.
inline constexpr double kSeriesSwitchover = 20.0;

struct ZeroResult {
  double nu = 0.0;
  double k = 0.0;
  /// Function value at k. For the annular equations the difference is
  /// divided by the Hankel moduli J^2 + Y^2 at the radii, so it is scale free.
  double residual = 0.0;
  int iterations = 0;
};

/// Gamma function for x > 0.
double gamma(double x);

/// Bessel function of the first kind J_nu(x), 0 <= nu <= 12, 0 <= x <= 100.
double bessel_j(double nu, double x);

/// Bessel function of the second kind Y_nu(x), 0 <= nu <= 12, 0 < x <= 100.
/// Integer orders use the logarithmic limit series, never a finite
/// difference in the order.
double bessel_y(double nu, double x);

/// Smallest positive zero j_{nu,1} of J_nu.
ZeroResult first_bessel_zero(double nu);

/// Smallest k > 0 with J_nu(k r1) Y_nu(k r2) - J_nu(k r2) Y_nu(k r1) = 0.
/// This is the radial condition for the fundamental mode of an annular
/// sector rho1 < r < rho2 whose angular factor has order nu.
ZeroResult cross_product_root(double nu, double rho1, double rho2);

/// Smallest k > 0 with J_nu(k r1) Y_nu(k r1) = J_nu(k r2) Y_nu(k r2), i.e. the
/// annular equation with equal radii inside each product. Returned only for
/// auditing; empty when no sign change is found for k*rho2 <= 100.
std::optional<ZeroResult> equal_radius_annular_root(double nu, double rho1, double rho2);

}  // namespace wedgebound::special
