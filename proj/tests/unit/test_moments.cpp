#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wedgebound/errors.hpp"
#include "wedgebound/moments.hpp"

using namespace wedgebound;
using std::numbers::pi;

namespace {

const double kSilver = std::sqrt(2.0) + std::log(1 + std::sqrt(2.0));

Domain slit_square() {
  return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0}, {0, 0}}});
}

// Star-shaped random polygon with the origin as a vertex, inside the closed
// right half-plane {x >= 0}.
Domain random_fan(std::mt19937_64& rng, double aperture, double bisector) {
  std::uniform_real_distribution<double> rad(0.4, 1.6);
  std::vector<Point> v{{0, 0}};
  const int n = 6;
  for (int i = 0; i <= n; ++i) {
    const double t = bisector - aperture / 2 + aperture * i / n;
    v.push_back(rad(rng) * Point{std::cos(t), std::sin(t)});
  }
  return Domain(Polygon{v});
}

}  // namespace

TEST_CASE("closed forms") {
  const double rho = 1.7;
  const auto half = moment_pw(Domain(CircularSector{{0, 0}, rho, pi, pi / 2}), 1);
  CHECK(half.method == QuadratureMethod::ClosedForm);
  CHECK(half.abs_err == 0);
  CHECK(half.value == doctest::Approx(pi * std::pow(rho, 4) / 8).epsilon(1e-14));
  for (double alpha : {1.0, 1.5, 3.0}) {
    const auto s = moment_pw(Domain(CircularSector{{0, 0}, rho, pi / alpha, pi / (2 * alpha)}), alpha);
    CHECK(s.value == doctest::Approx(std::pow(rho, 2 * alpha + 2) * pi / (2 * alpha * (2 * alpha + 2)))
                         .epsilon(1e-13));
  }
  for (double beta : {1.0, 1.25, 1.5, 2.0}) {
    const Domain sector(CircularSector{{0, 0}, rho, 2 * pi / beta, 0});
    const auto m = moment_reflex(sector, beta);
    CHECK(m.value == doctest::Approx(pi * std::pow(rho, beta + 2) / (beta * (beta + 2))).epsilon(1e-13));
    const auto b = boundary_moment(sector, beta);
    CHECK(b.value == doctest::Approx(pi * std::pow(rho, beta + 1) / beta).epsilon(1e-13));
  }
  const Domain cut(Disc{{0, 0}, 1}, {Chain{{-1, 0}, {0, 0}}});
  CHECK(moment_reflex(cut, 1).value == doctest::Approx(pi / 3).epsilon(1e-14));
}

TEST_CASE("polar quadrature reproduces closed forms") {
  for (double beta : {1.0, 1.5, 2.0}) {
    const Domain sector(CircularSector{{0, 0}, 1.3, 2 * pi / beta, 0});
    const auto exact = moment_reflex(sector, beta, QuadratureMethod::ClosedForm);
    const auto polar = moment_reflex(sector, beta, QuadratureMethod::PolarAdaptive);
    CHECK(polar.value == doctest::Approx(exact.value).epsilon(1e-10));
  }
  const Domain ring(AnnularSector{{0, 0}, 1, 2, pi, pi / 2});
  const auto exact = moment_pw(ring, 1);
  const auto polar = moment_pw(ring, 1, QuadratureMethod::PolarAdaptive);
  CHECK(exact.method == QuadratureMethod::ClosedForm);
  CHECK(polar.value == doctest::Approx(exact.value).epsilon(1e-10));
}

TEST_CASE("slit square moment by three methods") {
  const Domain d = slit_square();
  const double expected = 2.0 / 3 * kSilver;
  const auto polar = moment_reflex(d, 1);
  CHECK(polar.method == QuadratureMethod::PolarAdaptive);
  CHECK(polar.value == doctest::Approx(expected).epsilon(1e-10));
  const auto tri = moment_reflex(d, 1, QuadratureMethod::TriangleGauss);
  CHECK(tri.value == doctest::Approx(expected).epsilon(1e-10));
  const auto mc = moment_mc_oracle(d, WedgeFamily::reflex(1), 1'000'000, 42);
  CHECK(std::fabs(mc.value - expected) <= mc.abs_err);
}

TEST_CASE("slit square boundary moment") {
  // Side by side: right (S + 2)/2, top and bottom S/2, left (S - 2)/2, slit 0.
  const auto b = boundary_moment(slit_square(), 1);
  CHECK(b.value == doctest::Approx(2 * kSilver).epsilon(1e-10));
  CHECK(b.abs_err <= 1e-8 * b.value);
}

TEST_CASE("method agreement on random polygons") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const Domain d = random_fan(rng, pi * 0.95, 0);
    for (double beta : {1.0, 1.6, 2.0}) {
      const WedgeFamily fam = WedgeFamily::reflex(beta);
      const auto polar = moment(d, fam, QuadratureMethod::PolarAdaptive);
      const auto tri = moment(d, fam, QuadratureMethod::TriangleGauss);
      CHECK(std::fabs(polar.value - tri.value) <= 1e-9 * polar.value);
      const auto mc = moment_mc_oracle(d, fam, 200'000, 1000 + trial);
      CHECK(std::fabs(mc.value - polar.value) <= mc.abs_err + polar.abs_err);
    }
  }
}

TEST_CASE("scaling covariance") {
  std::mt19937_64 rng(23);
  const Domain d = random_fan(rng, pi * 0.9, pi / 2);
  for (double s : {0.5, 2.0, 3.0}) {
    for (double alpha : {1.0, 1.05}) {
      const double base = moment_pw(d, alpha).value;
      const double big = moment_pw(scaled(d, s), alpha).value;
      CHECK(big == doctest::Approx(std::pow(s, 2 * alpha + 2) * base).epsilon(1e-9));
    }
    const Domain sq = slit_square();
    const double base = moment_reflex(sq, 1.0).value;
    CHECK(moment_reflex(scaled(sq, s), 1.0).value == doctest::Approx(std::pow(s, 3) * base).epsilon(1e-9));
    const double bb = boundary_moment(sq, 1.0).value;
    CHECK(boundary_moment(scaled(sq, s), 1.0).value == doctest::Approx(std::pow(s, 2) * bb).epsilon(1e-9));
  }
}

TEST_CASE("slits do not change the moment") {
  const Domain plain(Polygon{{{0, -1}, {2, -1}, {2, 1}, {0, 1}}});
  const Domain slit(Polygon{{{0, -1}, {2, -1}, {2, 1}, {0, 1}}}, {Chain{{2, 0}, {1, 0.2}}});
  const double a = moment_reflex(plain, 2).value;
  CHECK(moment_reflex(slit, 2).value == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("half-plane bridge between the two families") {
  std::mt19937_64 rng(29);
  const Domain d = random_fan(rng, pi, 0);
  const Domain pw = to_wedge_frame(d, Pose({0, 0}, -pi / 2));
  const double reflex = moment_reflex(d, 2).value;
  CHECK(moment_pw(pw, 1).value == doctest::Approx(reflex).epsilon(1e-9));
}

TEST_CASE("monte carlo oracle") {
  const Domain disc(Disc{{0, 0}, 1}, {Chain{{-1, 0}, {0, 0}}});
  const WedgeFamily fam = WedgeFamily::reflex(1);
  const auto par = moment_mc_oracle(disc, fam, 1'000'000, 7, kernels::Execution::Parallel);
  const auto ser = moment_mc_oracle(disc, fam, 1'000'000, 7, kernels::Execution::Serial);
  CHECK(par.value == ser.value);
  CHECK(par.abs_err == ser.abs_err);
  CHECK(std::fabs(par.value - pi / 3) <= par.abs_err);
  CHECK_THROWS_AS(moment_mc_oracle(disc, fam, 0, 1), DomainError);
}

TEST_CASE("containment is enforced") {
  const Domain square(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
  CHECK_THROWS_AS(moment_reflex(square, 1), ContainmentError);
  CHECK_THROWS_AS(moment_pw(square, 1), ContainmentError);
}
