#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wedgebound::kernels {

/// Which implementation of a data-parallel loop to run. The serial versions
/// are the reference the parallel ones are tested against.
enum class Execution { Serial, Parallel };

/// Compressed sparse row matrix.
struct CsrMatrix {
  int rows = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  std::size_t nonzeros() const { return val.size(); }
  std::vector<double> diagonal() const;
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Sums duplicate entries.
CsrMatrix from_triplets(int rows, std::vector<Triplet> triplets);

namespace serial {
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = x + beta y
void xpby(std::span<const double> x, double beta, std::span<double> y);
}  // namespace serial

namespace parallel {
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
}  // namespace parallel

inline void spmv(Execution e, const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  e == Execution::Serial ? serial::spmv(a, x, y) : parallel::spmv(a, x, y);
}
inline double dot(Execution e, std::span<const double> a, std::span<const double> b) {
  return e == Execution::Serial ? serial::dot(a, b) : parallel::dot(a, b);
}
inline void axpy(Execution e, double alpha, std::span<const double> x, std::span<double> y) {
  e == Execution::Serial ? serial::axpy(alpha, x, y) : parallel::axpy(alpha, x, y);
}
inline void xpby(Execution e, std::span<const double> x, double beta, std::span<double> y) {
  e == Execution::Serial ? serial::xpby(x, beta, y) : parallel::xpby(x, beta, y);
}

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace wedgebound::kernels
