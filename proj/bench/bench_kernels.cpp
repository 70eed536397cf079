// Serial reference against OpenMP kernels on an assembled FEM system.

#include <benchmark/benchmark.h>

#include <vector>

#include "wedgebound/domain_io.hpp"
#include "wedgebound/eigensolver.hpp"
#include "wedgebound/mesh.hpp"
#include "wedgebound/moments.hpp"

using namespace wedgebound;

namespace {

// D1 mesh at h = 0.1 refined `levels` times.
const FemSystem& system_for(int levels) {
  static std::vector<std::pair<int, FemSystem>> cache;
  for (const auto& [key, sys] : cache) {
    if (key == levels) return sys;
  }
  SlitMesh m = build_slit_mesh(builtin_domain("@D1"), 0.1);
  for (int i = 0; i < levels; ++i) m = refine(m);
  cache.emplace_back(levels, assemble(m));
  return cache.back().second;
}

kernels::Execution execution(const benchmark::State& state) {
  return state.range(1) ? kernels::Execution::Parallel : kernels::Execution::Serial;
}

void BM_Spmv(benchmark::State& state) {
  const auto& a = system_for(static_cast<int>(state.range(0))).stiffness;
  std::vector<double> x(a.rows, 1.0), y(a.rows);
  for (auto _ : state) {
    kernels::spmv(execution(state), a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["rows"] = a.rows;
}

void BM_Dot(benchmark::State& state) {
  std::vector<double> x(state.range(0), 0.5), y(state.range(0), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dot(execution(state), x, y));
}

void BM_MonteCarloMoment(benchmark::State& state) {
  const Domain d = builtin_domain("@D1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_mc_oracle(d, WedgeFamily::reflex(1.0), state.range(0), 1, execution(state)));
  }
}

void BM_Fem(benchmark::State& state) {
  FemOptions opts;
  opts.execution = execution(state);
  const Domain d = builtin_domain("@D1");
  for (auto _ : state) benchmark::DoNotOptimize(lambda1_fem(d, 0.1, opts).extrapolated);
}

}  // namespace

BENCHMARK(BM_Spmv)->ArgsProduct({{1, 3, 5}, {0, 1}});
BENCHMARK(BM_Dot)->ArgsProduct({{1 << 12, 1 << 20}, {0, 1}});
BENCHMARK(BM_MonteCarloMoment)->ArgsProduct({{1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fem)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
