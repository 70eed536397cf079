#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wedgebound/eigensolver.hpp"
#include "wedgebound/errors.hpp"
#include "wedgebound/special.hpp"

using namespace wedgebound;
using std::numbers::pi;

namespace {

Domain square() { return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}); }

Domain slit_square() {
  return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0}, {0, 0}}});
}

Domain polygon_cut_disc(int n) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) v.push_back({std::cos(2 * pi * k / n), std::sin(2 * pi * k / n)});
  return Domain(Polygon{v}, {Chain{{-1, 0}, {0, 0}}});
}

}  // namespace

TEST_CASE("structured square mesh") {
  const SlitMesh m = build_slit_mesh(square(), 0.25);
  CHECK(m.nodes.size() == 81);
  CHECK(m.elements.size() == 128);
  CHECK(m.dirichlet_nodes.size() == 32);
  CHECK(m.area() == doctest::Approx(4).epsilon(1e-14));
  CHECK_THROWS_AS(build_slit_mesh(square(), 0), DomainError);
  CHECK_THROWS_AS(build_slit_mesh(square(), -1), DomainError);
}

TEST_CASE("slit nodes are Dirichlet") {
  const SlitMesh m = build_slit_mesh(slit_square(), 0.25);
  const auto mask = m.dirichlet_mask();
  int on_slit = 0;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Point p = m.nodes[i];
    if (std::fabs(p.y) < 1e-14 && p.x <= 1e-14) {
      CHECK(mask[i]);
      ++on_slit;
    }
  }
  CHECK(on_slit == 5);
  const SlitMesh f = refine(m);
  CHECK(f.elements.size() == 4 * m.elements.size());
  CHECK(f.area() == doctest::Approx(4).epsilon(1e-13));
}

TEST_CASE("slits ending between boundary subdivision points") {
  // A slit across the square at y = 0.37 leaves two rectangles; the taller
  // one, 2 x 1.37, carries lambda_1.
  const Domain split(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0.37}, {1, 0.37}}});
  const EigenEstimate e = lambda1_fem(split, 0.25);
  CHECK(e.extrapolated == doctest::Approx(pi * pi * (0.25 + 1 / (1.37 * 1.37))).epsilon(2e-3));

  // Slit from an arc point that is not a chord vertex to the centre.
  const Domain cut(Disc{{0, 0}, 1}, {Chain{{std::cos(1.0), std::sin(1.0)}, {0, 0}}});
  const SlitMesh m = build_slit_mesh(cut, 0.3);
  bool tip_is_node = false;
  for (Point p : m.nodes) tip_is_node = tip_is_node || (p == Point{std::cos(1.0), std::sin(1.0)});
  CHECK(tip_is_node);
}

TEST_CASE("refinement snaps curved boundaries") {
  const Domain disc(Disc{{0.3, 0.1}, 1.5});
  SlitMesh m = build_slit_mesh(disc, 0.5);
  for (int k = 0; k < 2; ++k) m = refine(m);
  for (int i : m.dirichlet_nodes) CHECK(norm(m.nodes[i] - Point{0.3, 0.1}) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(m.curved);
}

TEST_CASE("square eigenvalue") {
  const auto est = lambda1_fem(square(), 0.125);
  CHECK(est.extrapolated == doctest::Approx(pi * pi / 2).epsilon(5e-3));
  CHECK(est.upper_bound >= pi * pi / 2);
  CHECK(est.upper_bound == doctest::Approx(est.levels.back().lambda).epsilon(1e-10));
  CHECK(est.observed_order >= 0.8);
  CHECK(est.observed_order <= 2.2);
  const auto mask = est.mesh.dirichlet_mask();
  double low = 1e300;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) low = std::min(low, est.eigenvector[i]);
  }
  CHECK(low > 0);
}

TEST_CASE("rectangle eigenvalue") {
  const Domain rect(Polygon{{{0, 0}, {3, 0}, {3, 1}, {0, 1}}});
  const auto est = lambda1_fem(rect, 0.1);
  CHECK(est.extrapolated == doctest::Approx(pi * pi * (1.0 / 9 + 1)).epsilon(5e-3));
}

TEST_CASE("rayleigh quotient") {
  SlitMesh m = build_slit_mesh(square(), 0.25);
  for (int k = 0; k < 3; ++k) m = refine(m);
  std::vector<double> v(m.nodes.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::sin(pi * (m.nodes[i].x + 1) / 2) * std::sin(pi * (m.nodes[i].y + 1) / 2);
  }
  for (int i : m.dirichlet_nodes) v[i] = 0;
  const double q = rayleigh_quotient(m, v);
  CHECK(q >= pi * pi / 2);
  CHECK(q <= pi * pi / 2 * 1.002);
  std::vector<double> spike(m.nodes.size(), 0.0);
  const auto mask = m.dirichlet_mask();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) {
      spike[i] = 1;
      break;
    }
  }
  CHECK(rayleigh_quotient(m, spike) >= pi * pi / 2);
  CHECK_THROWS_AS(rayleigh_quotient(m, std::vector<double>(m.nodes.size(), 0.0)), DomainError);
  CHECK_THROWS_AS(rayleigh_quotient(m, std::vector<double>(m.nodes.size(), 1.0)), DomainError);
}

TEST_CASE("closed forms") {
  const double j0 = special::first_bessel_zero(0).k;
  CHECK(lambda1_closed(Domain(Disc{{0, 0}, 1})) == doctest::Approx(j0 * j0));
  CHECK(lambda1_closed(Domain(Disc{{0, 0}, 1}, {Chain{{-1, 0}, {0, 0}}})) == doctest::Approx(pi * pi));
  CHECK(lambda1_closed(Domain(CircularSector{{0, 0}, 1, 2 * pi, 0})) == doctest::Approx(pi * pi));
  CHECK(lambda1_closed(Domain(AnnularSector{{0, 0}, 1, 2, 2 * pi, 0})) == doctest::Approx(pi * pi));
  CHECK_THROWS_AS(lambda1_closed(square()), DomainError);
}

TEST_CASE("curved shapes against closed forms") {
  const Domain disc(Disc{{0, 0}, 1});
  const auto d = lambda1_fem(disc, 0.1);
  CHECK(d.extrapolated == doctest::Approx(lambda1_closed(disc)).epsilon(1e-2));
  const Domain half(AnnularSector{{0, 0}, 1, 2, pi, 0});
  const auto a = lambda1_fem(half, 0.1);
  CHECK(a.extrapolated == doctest::Approx(lambda1_closed(half)).epsilon(5e-3));
}

TEST_CASE("polygonal cut disc") {
  const auto est = lambda1_fem(polygon_cut_disc(512), 0.05);
  CHECK(est.extrapolated == doctest::Approx(pi * pi).epsilon(2e-2));
}

TEST_CASE("serial and parallel solves agree") {
  FemOptions ser;
  ser.execution = kernels::Execution::Serial;
  const auto a = lambda1_fem(slit_square(), 0.25, ser);
  const auto b = lambda1_fem(slit_square(), 0.25);
  CHECK(a.extrapolated == doctest::Approx(b.extrapolated).epsilon(1e-10));
}
