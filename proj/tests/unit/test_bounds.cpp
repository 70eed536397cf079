#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wedgebound/bounds.hpp"
#include "wedgebound/eigensolver.hpp"
#include "wedgebound/errors.hpp"

using namespace wedgebound;
using std::numbers::pi;

namespace {

Domain slit_square() {
  return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0}, {0, 0}}});
}

// Star-shaped polygon about the origin, all vertices strictly inside R_beta.
Domain random_star(std::mt19937_64& rng, double beta) {
  std::uniform_real_distribution<double> rad(0.3, 1.5);
  const double half = pi / beta * (beta > 1 ? 0.98 : 1.0);
  std::vector<Point> v;
  const int n = 9;
  if (beta > 1) v.push_back({0, 0});
  for (int i = 0; i < n; ++i) {
    const double t = -half + 2 * half * (beta > 1 ? double(i) / (n - 1) : (i + 0.5) / n);
    v.push_back(rad(rng) * Point{std::cos(t), std::sin(t)});
  }
  std::vector<Chain> slits;
  if (beta == 1) {
    // Close the cut: the ray theta = pi must be a slit up to the boundary.
    const Domain probe{Polygon{v}};
    slits.push_back({{-ray_cast(probe, pi), 0}, {0, 0}});
  }
  return Domain(Polygon{v}, slits);
}

}  // namespace

TEST_CASE("Faber-Krahn") {
  const double j0 = special::first_bessel_zero(0).k;
  // pi j01^2 / 4 from scipy.special.jn_zeros.
  CHECK(faber_krahn_bound(slit_square()).value == doctest::Approx(4.542103633884307).epsilon(1e-13));
  CHECK(faber_krahn_bound(Domain(Disc{{2, 1}, 1})).value == doctest::Approx(j0 * j0).epsilon(1e-14));
  CHECK(faber_krahn_bound(scaled(slit_square(), 3)).value ==
        doctest::Approx(faber_krahn_bound(slit_square()).value / 9).epsilon(1e-14));
}

TEST_CASE("equality for sectors") {
  for (double alpha : {1.0, 1.5, 2.0, 3.0}) {
    const double rho = 1.3;
    const Domain s(CircularSector{{0.5, -2}, rho, pi / alpha, 0.4});
    const Pose pose({0.5, -2}, 0.4 - pi / (2 * alpha));
    const double j = special::first_bessel_zero(alpha).k;
    const auto b = pw_bound(s, alpha, pose);
    CHECK(b.valid());
    CHECK(b.value == doctest::Approx(j * j / (rho * rho)).epsilon(1e-12));
  }
  for (double beta : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    const double rho = 0.7;
    const Domain s(CircularSector{{1, 1}, rho, 2 * pi / beta, -1.0});
    const double j = special::first_bessel_zero(beta / 2).k;
    const auto b = reflex_bound(s, beta, Pose({1, 1}, -1.0));
    CHECK(b.value == doctest::Approx(j * j / (rho * rho)).epsilon(1e-8));
  }
  const Domain cut(Disc{{0, 0}, 2}, {Chain{{-2, 0}, {0, 0}}});
  CHECK(reflex_bound(cut, 1, Pose{}).value == doctest::Approx(pi * pi / 4).epsilon(1e-13));
  const double j0 = special::first_bessel_zero(0).k;
  CHECK(pi * pi / (j0 * j0) == doctest::Approx(1.7066).epsilon(1e-4));
}

TEST_CASE("slit square reflex bound from its moment") {
  const double i1 = 2.0 / 3 * (std::sqrt(2.0) + std::log(1 + std::sqrt(2.0)));
  const auto b = reflex_bound(slit_square(), 1, Pose{});
  CHECK(b.moment->value == doctest::Approx(i1).epsilon(1e-10));
  CHECK(b.value == doctest::Approx(pi * pi * std::pow(3 * i1 / pi, -2.0 / 3)).epsilon(1e-10));
}

TEST_CASE("containment gate and force") {
  const Domain square(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
  CHECK_THROWS_AS(reflex_bound(square, 1, Pose{}), ContainmentError);
  BoundOptions opt;
  opt.force = true;
  const auto b = reflex_bound(square, 1, Pose{}, opt);
  CHECK_FALSE(b.valid());
  CHECK(b.forced);
  CHECK(b.value > 0);
}

TEST_CASE("beta = 2 and alpha = 1 coincide") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 5; ++i) {
    const Domain d = random_star(rng, 2.0);
    const auto r = reflex_bound(d, 2, Pose{});
    const auto p = pw_bound(d, 1, Pose({0, 0}, -pi / 2));
    CHECK(p.value == doctest::Approx(r.value).epsilon(1e-9));
  }
}

TEST_CASE("bounds scale as 1/s^2") {
  const Domain d = slit_square();
  const double base = reflex_bound(d, 1, Pose{}).value;
  for (double s : {0.5, 2.0, 3.0}) {
    CHECK(reflex_bound(scaled(d, s), 1, Pose{}).value == doctest::Approx(base / (s * s)).epsilon(1e-9));
  }
}

TEST_CASE("annular root bound") {
  CHECK(annular_root_bound(1, 1, 2) == doctest::Approx(pi * std::pow(7.0, -1.0 / 3)).epsilon(1e-13));
  CHECK(annular_root_bound(1, 1, 2) == doctest::Approx(1.6421).epsilon(1e-4));
  CHECK(annular_root_bound_squared_exponent(1, 1, 2) ==
        doctest::Approx(pi * std::pow(7.0, -2.0 / 3)).epsilon(1e-13));
  CHECK(annular_root_bound(1, 1, 2) <= special::cross_product_root(0.5, 1, 2).k);
  const double j = special::first_bessel_zero(0.75).k;
  CHECK(annular_root_bound(1.5, 1e-6, 2) == doctest::Approx(j / 2).epsilon(1e-9));
  CHECK(annular_root_bound(1.5, 2, 6) == doctest::Approx(annular_root_bound(1.5, 1, 3) / 2).epsilon(1e-13));
  CHECK_THROWS_AS(annular_root_bound(1, 2, 1), DomainError);
}

TEST_CASE("lemma inequality") {
  for (double beta : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    const Domain s(CircularSector{{0, 0}, 1.9, 2 * pi / beta, 0});
    const auto g = lemma_gap(s, beta, Pose{});
    CHECK(std::fabs(g.gap) <= 1e-8 * g.rhs);
  }
  const auto d1 = lemma_gap(slit_square(), 1, Pose{});
  CHECK(d1.lhs == doctest::Approx(1.7667).epsilon(1e-4));
  CHECK(d1.rhs == doctest::Approx(1.46143).epsilon(1e-5));
  CHECK(d1.gap > 0);
  std::mt19937_64 rng(43);
  for (double beta : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    for (int i = 0; i < 40; ++i) {
      const auto g = lemma_gap(random_star(rng, beta), beta, Pose{});
      CHECK(g.gap >= -g.tol);
    }
  }
}

TEST_CASE("reflex formula exceeds lambda_1 for beta < 2 off the apex") {
  // Unit disc tangent to the cut ray; contained in R_1.
  const Domain tangent(Disc{{-1, -1}, 1});
  const auto b = reflex_bound(tangent, 1, Pose{});
  REQUIRE(b.containment_ok);
  const double j0 = 2.404825557695773;
  CHECK(b.moment->value == doctest::Approx(0.792703).epsilon(1e-5));
  CHECK(b.value == doctest::Approx(11.8826).epsilon(1e-4));
  CHECK(b.value > 2 * j0 * j0);
  const auto g = lemma_gap(tangent, 1, Pose{});
  CHECK(g.lhs == doctest::Approx(0.46172).epsilon(1e-4));
  CHECK(g.rhs == doctest::Approx(0.75698).epsilon(1e-4));
  CHECK(g.gap < -10 * g.tol);

  // Sliding a disc out along a wedge edge: I_beta decays like t^(beta-2),
  // so the formula grows while lambda_1 stays fixed. At beta = 2 it is
  // translation invariant.
  for (double beta : {1.0, 1.5, 2.0}) {
    const Point edge{std::cos(pi / beta), std::sin(pi / beta)};
    const Point inward{edge.y, -edge.x};
    std::vector<double> values;
    for (double t : {2.0, 8.0, 32.0}) {
      values.push_back(reflex_bound(Domain(Disc{t * edge + 0.6 * inward, 0.5}), beta, Pose{}).value);
    }
    if (beta < 2) {
      CHECK(values[1] > values[0]);
      CHECK(values[2] > values[1]);
      CHECK(values[2] > 4 * j0 * j0);
    } else {
      CHECK(values[2] == doctest::Approx(values[0]).epsilon(1e-9));
    }
  }
}

TEST_CASE("reflex formula exceeds lambda_1 on a star-shaped cut polygon at its centre") {
  // The apex sits at a star centre and a slit closes the cut ray, yet the
  // beta = 1 value exceeds the Rayleigh quotient of a conforming FEM trial
  // function, which is itself an upper bound for lambda_1.
  const std::vector<Point> v{{-0.980727, -0.356955}, {-0.615669, -1.066369}, {0.106960, -0.606602},
                             {0.647436, -0.543264},  {0.303318, 0},          {0.341337, 0.286416},
                             {0.112094, 0.635718},   {-0.207189, 0.358862},  {-1.055449, 0.384152}};
  const Domain probe{Polygon{v}};
  const Domain d(Polygon{v}, {Chain{{-ray_cast(probe, pi), 0}, {0, 0}}});
  CHECK(is_star_shaped(d));
  const BoundReport b = reflex_bound(d, 1.0, Pose());
  REQUIRE(b.valid());
  const auto mc = moment_mc_oracle(d, WedgeFamily::reflex(1.0), 400'000, 3);
  CHECK(std::fabs(mc.value - b.moment->value) <= 4 * mc.abs_err);
  const EigenEstimate fem = lambda1_fem(d, 0.06);
  CHECK(b.value > 1.2 * fem.upper_bound);
  CHECK(lemma_gap(d, 1.0, Pose()).gap >= 0);
}
