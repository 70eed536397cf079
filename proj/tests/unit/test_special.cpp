#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wedgebound/errors.hpp"
#include "wedgebound/special.hpp"

namespace sp = wedgebound::special;
using std::numbers::pi;

// libstdc++'s cyl_bessel_j / cyl_neumann serve as the independent oracle.
TEST_CASE("bessel_j and bessel_y agree with the standard library") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 1.0 / 3, 2.0 / 3, 1.999, 3.0, 7.25, 12.0}) {
    for (double x : {0.05, 0.5, 1.0, 2.4, 5.0, 9.7, 15.0, 19.9, 20.1, 35.0, 60.0, 99.0}) {
      const double j = std::cyl_bessel_j(nu, x);
      const double y = std::cyl_neumann(nu, x);
      CHECK(sp::bessel_j(nu, x) == doctest::Approx(j).epsilon(1e-10).scale(1.0));
      CHECK(std::fabs(sp::bessel_y(nu, x) - y) <= 1e-10 * std::max(1.0, std::fabs(y)));
    }
  }
}

TEST_CASE("half-integer orders have elementary forms") {
  for (double x : {0.3, 1.0, 4.0, 25.0}) {
    CHECK(sp::bessel_j(0.5, x) == doctest::Approx(std::sqrt(2 / (pi * x)) * std::sin(x)).epsilon(1e-12));
    CHECK(sp::bessel_y(0.5, x) == doctest::Approx(-std::sqrt(2 / (pi * x)) * std::cos(x)).epsilon(1e-12));
  }
}

TEST_CASE("first zeros") {
  CHECK(sp::first_bessel_zero(0).k == doctest::Approx(2.404825557695773).epsilon(1e-13));
  CHECK(sp::first_bessel_zero(0.5).k == doctest::Approx(pi).epsilon(1e-13));
  CHECK(sp::first_bessel_zero(1).k == doctest::Approx(3.831705970207512).epsilon(1e-13));
  for (double nu : {0.25, 1.5, 4.0, 9.5, 12.0}) {
    const auto z = sp::first_bessel_zero(nu);
    CHECK(std::fabs(std::cyl_bessel_j(nu, z.k)) < 1e-11);
    CHECK(z.k > nu);
  }
}

TEST_CASE("cross-product root") {
  // nu = 1/2: sin(k (rho2 - rho1)) = 0, so k = pi / (rho2 - rho1).
  CHECK(sp::cross_product_root(0.5, 1, 2).k == doctest::Approx(pi).epsilon(1e-11));
  CHECK(sp::cross_product_root(0.5, 0.5, 3).k == doctest::Approx(pi / 2.5).epsilon(1e-11));
  const auto r = sp::cross_product_root(1.0, 1, 2);
  const double f = std::cyl_bessel_j(1, r.k) * std::cyl_neumann(1, 2 * r.k) -
                   std::cyl_bessel_j(1, 2 * r.k) * std::cyl_neumann(1, r.k);
  CHECK(std::fabs(f) < 1e-10);
  // A thin hole barely changes the half-integer case from the disc value.
  CHECK(sp::cross_product_root(0.5, 1e-3, 1).k == doctest::Approx(pi).epsilon(2e-3));
}

TEST_CASE("equal-radius annular equation") {
  const auto r = sp::equal_radius_annular_root(0.5, 1, 2);
  REQUIRE(r.has_value());
  CHECK(r->k == doctest::Approx(pi / 2).epsilon(1e-10));
}

TEST_CASE("special-function domain checks") {
  CHECK_THROWS_AS(sp::bessel_j(-1, 1), wedgebound::DomainError);
  CHECK_THROWS_AS(sp::bessel_y(0, 0), wedgebound::DomainError);
  CHECK_THROWS_AS(sp::cross_product_root(0.5, 2, 1), wedgebound::DomainError);
  CHECK(sp::gamma(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
}
