#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wedgebound/errors.hpp"
#include "wedgebound/geometry.hpp"

using namespace wedgebound;
using std::numbers::pi;

namespace {

Domain slit_square() {
  return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0}, {0, 0}}});
}

}  // namespace

TEST_CASE("pose round trip and convention") {
  const Pose pose({0.3, -1.2}, 0.7);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const Point p{u(rng), u(rng)};
    const Point q = pose.to_world(pose.to_frame(p));
    CHECK(norm(q - p) < 1e-12);
  }
  const Point f = Pose({0, 0}, pi / 2).to_frame({1, 0});
  CHECK(f.x == doctest::Approx(0).scale(1));
  CHECK(f.y == doctest::Approx(-1));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Domain(Disc{{0, 0}, -1}), ValidationError);
  CHECK_THROWS_AS(Domain(Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}), ValidationError);
  CHECK_THROWS_AS(Domain(Polygon{{{0, 0}, {1, 0}, {1, 1}}}, {Chain{{0.5, 0.1}, {3, 0.1}}}),
                  ValidationError);
  CHECK_THROWS_AS(WedgeFamily::reflex(2.5), DomainError);
  CHECK_THROWS_AS(WedgeFamily::payne_weinberger(0.5), DomainError);
  const Domain cw(Polygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}});
  CHECK(signed_area(cw.polygon()->vertices) > 0);
}

TEST_CASE("area is pose invariant") {
  const Domain d = slit_square();
  CHECK(area(d) == doctest::Approx(4));
  const Domain moved = to_wedge_frame(d, Pose({0.4, 0.2}, 1.1));
  CHECK(area(moved) == doctest::Approx(4).epsilon(1e-12));
  CHECK(area(Domain(CircularSector{{0, 0}, 2, pi / 2, 0})) == doctest::Approx(pi));
}

TEST_CASE("containment") {
  for (double beta : {1.0, 1.3, 1.5, 2.0}) {
    const double ap = 2 * pi / beta;
    const Domain exact(CircularSector{{0, 0}, 1, ap, 0});
    CHECK(contains_in_wedge(exact, WedgeFamily::reflex(beta)).ok);
    if (beta > 1) {
      const Domain wide(CircularSector{{0, 0}, 1, ap + 1e-6, 0});
      CHECK_FALSE(contains_in_wedge(wide, WedgeFamily::reflex(beta)).ok);
    }
  }
  CHECK(contains_in_wedge(slit_square(), WedgeFamily::reflex(1)).ok);
  const Domain plain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
  const auto bad = contains_in_wedge(plain, WedgeFamily::reflex(1));
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.has_value());
  const Domain half(CircularSector{{0, 0}, 1, pi, pi / 2});
  CHECK(contains_in_wedge(half, WedgeFamily::payne_weinberger(1)).ok);
  CHECK_FALSE(contains_in_wedge(half, WedgeFamily::payne_weinberger(1.01)).ok);
}

TEST_CASE("polar area matches shoelace for star-shaped polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rad(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> v;
    const int n = 5 + trial;
    for (int i = 0; i < n; ++i) {
      const double t = 2 * pi * i / n;
      v.push_back(rad(rng) * Point{std::cos(t), std::sin(t)});
    }
    const Domain d{Polygon{v}};
    REQUIRE(is_star_shaped(d));
    // Between vertex directions the area element is exact per triangle fan.
    std::vector<double> cuts = profile_breakpoints(d);
    cuts.push_back(cuts.front() + 2 * pi);
    double polar = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const int m = 400;
      const double h = (cuts[i + 1] - cuts[i]) / m;
      for (int k = 0; k <= m; ++k) {
        const double r = ray_cast(d, cuts[i] + k * h);
        polar += (k == 0 || k == m ? 1 : (k % 2 ? 4 : 2)) * h / 3 * r * r / 2;
      }
    }
    CHECK(polar == doctest::Approx(area(d)).epsilon(1e-8));
  }
}

TEST_CASE("ray profile of a slit square") {
  const Domain d = slit_square();
  const auto prof = ray_profile(d, pi / 4);
  REQUIRE(prof.size() == 1);
  CHECK(prof[0].hi == doctest::Approx(std::sqrt(2.0)));
  CHECK(ray_cast(d, 0) == doctest::Approx(1));
  const Domain ring(AnnularSector{{0, 0}, 1, 2, pi, 0});
  const auto r = ray_profile(ring, 0.2);
  REQUIRE(r.size() == 1);
  CHECK(r[0].lo == doctest::Approx(1));
  CHECK_THROWS_AS(ray_cast(ring, 0.2), DomainError);
}

TEST_CASE("proof map") {
  const Point p = proof_map(4, pi / 2, 1);
  CHECK(p.x == doctest::Approx(1.7818).epsilon(1e-4));
  CHECK(p.y == doctest::Approx(1.7818).epsilon(1e-4));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    const double beta = 1 + u(rng);
    const double theta = (2 * u(rng) - 1) * pi / beta * 0.999999;
    CHECK(proof_map(3 * u(rng) + 1e-6, theta, beta).x > 0);
  }
  CHECK_THROWS_AS(proof_map(1, pi, 1), DomainError);
}

TEST_CASE("boundary has both slit sides") {
  const BoundaryCurve c = boundary(slit_square());
  CHECK(c.pieces.size() == 6);
  CHECK(c.total_length() == doctest::Approx(10));
}
