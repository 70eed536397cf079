#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wedgebound/eigensolver.hpp"
#include "wedgebound/errors.hpp"
#include "wedgebound/origin_search.hpp"
#include "wedgebound/special.hpp"

using namespace wedgebound;
using std::numbers::pi;

TEST_CASE("cut disc: slit tip seed gives pi^2, other poses exceed lambda_1") {
  const Point tip{0.5, -0.25};
  const Domain cut(Disc{tip, 1}, {Chain{tip, {0.5 + std::cos(2.0), -0.25 + std::sin(2.0)}}});
  const auto r = optimize_pose(cut, WedgeFamily::reflex(1), 120);
  REQUIRE(r.feasible());
  const auto at_tip = std::find_if(r.trace.begin(), r.trace.end(), [&](const PoseTrial& t) {
    return norm(t.pose.origin - tip) == 0 && t.value;
  });
  REQUIRE(at_tip != r.trace.end());
  CHECK(*at_tip->value == doctest::Approx(pi * pi).epsilon(1e-10));
  // The search is a faithful maximizer of the formula; for beta = 1 the
  // formula is not a lower bound at every admissible pose.
  CHECK(r.best_bound->value > lambda1_closed(cut) * 1.1);
  CHECK(r.best_bound->containment_ok);
}

TEST_CASE("sector apex is recovered") {
  for (double beta : {1.25, 1.5, 2.0}) {
    const Domain s(CircularSector{{-1, 2}, 0.8, 2 * pi / beta, 0.9});
    const auto r = optimize_pose(s, WedgeFamily::reflex(beta), 100);
    REQUIRE(r.feasible());
    const double j = special::first_bessel_zero(beta / 2).k;
    CHECK(r.best_bound->value == doctest::Approx(j * j / 0.64).epsilon(1e-6));
  }
  const Domain q(CircularSector{{0, 0}, 1, pi / 2, 0.3});
  const auto r = optimize_pose(q, WedgeFamily::payne_weinberger(2), 100);
  const double j = special::first_bessel_zero(2).k;
  CHECK(r.best_bound->value == doctest::Approx(j * j).epsilon(1e-6));
}

TEST_CASE("square in a half-plane improves on the edge midpoint") {
  const Domain sq(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
  const WedgeFamily half = WedgeFamily::reflex(2);
  const double naive = reflex_bound(sq, 2, Pose({0, -1}, pi / 2)).value;
  const auto r = optimize_pose(sq, half, 200);
  REQUIRE(r.feasible());
  CHECK(r.best_bound->value >= naive);
  CHECK(r.best_bound->valid());
  for (const PoseTrial& t : r.trace) {
    if (t.value) CHECK(*t.value <= r.best_bound->value);
  }
  CHECK(r.evaluations <= 200);
  const auto again = optimize_pose(sq, half, 200);
  CHECK(again.best_bound->value == r.best_bound->value);
  CHECK(again.best_pose.origin == r.best_pose.origin);
}

TEST_CASE("infeasible is a result, not an exception") {
  const Domain sq(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
  // A 15 degree wedge holds the square only with its apex far outside the
  // search region.
  const auto r = optimize_pose(sq, WedgeFamily::payne_weinberger(12), 60);
  CHECK_FALSE(r.feasible());
  CHECK(r.evaluations <= 60);
  CHECK_THROWS_AS(optimize_pose(sq, WedgeFamily::reflex(1), 10), DomainError);
}
