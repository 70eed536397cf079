#include <random>
#include <vector>

#include "doctest.h"
#include "wedgebound/kernels.hpp"

namespace k = wedgebound::kernels;

namespace {

k::CsrMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> col(0, n - 1);
  std::normal_distribution<double> val;
  std::vector<k::Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 4.0});
    for (int j = 0; j < 5; ++j) t.push_back({i, col(rng), val(rng)});
  }
  return k::from_triplets(n, t);
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n : {1, 17, 4096, 4097, 30001}) {
    const k::CsrMatrix a = random_matrix(n, rng);
    std::vector<double> x(n), y1(n), y2(n);
    for (double& v : x) v = g(rng);
    k::serial::spmv(a, x, y1);
    k::parallel::spmv(a, x, y2);
    CHECK(y1 == y2);
    const double d1 = k::serial::dot(x, y1);
    const double d2 = k::parallel::dot(x, y1);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
    k::serial::axpy(0.3, x, y1);
    k::parallel::axpy(0.3, x, y2);
    CHECK(y1 == y2);
    k::serial::xpby(x, -1.7, y1);
    k::parallel::xpby(x, -1.7, y2);
    CHECK(y1 == y2);
  }
}

TEST_CASE("from_triplets sums duplicates") {
  const k::CsrMatrix a = k::from_triplets(2, {{0, 0, 1}, {1, 0, 2}, {0, 0, 3}, {1, 1, 5}});
  CHECK(a.nonzeros() == 3);
  CHECK(a.diagonal() == std::vector<double>{4, 5});
}
