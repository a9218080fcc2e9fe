// Serial reference vs OpenMP kernels on the grid-level workloads.
// Argument 0 runs Execution::serial, 1 runs Execution::parallel.

#include <benchmark/benchmark.h>

#include "kahler/calculus.hpp"
#include "kahler/catalog.hpp"
#include "kahler/identities.hpp"
#include "kahler/parallel.hpp"
#include "kahler/quadrature.hpp"
#include "kahler/shrinker.hpp"

namespace {

using namespace kahler;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(thread_count()));
}

void BM_IdentitySuite(benchmark::State& state) {
  const ImmersionSpec s = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  const QuadratureGrid g = make_grid(s.domain, 32, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_suite(s, g, 1e-8, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_IdentitySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WeightedIntegral(benchmark::State& state) {
  const ImmersionSpec s = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  const QuadratureGrid g = make_grid(s.domain, 64, 64);
  const PointFunction f = [](const SurfacePoint& sp) {
    return drift_laplacian(sp, field_jet(sp, ScalarFieldId{}));
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_integral(s, f, g, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_WeightedIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GaussianArea(benchmark::State& state) {
  const ImmersionSpec s = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  const QuadratureGrid g = make_grid(s.domain, 128, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_area(s, g, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_GaussianArea)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FamilyGradient(benchmark::State& state) {
  const Family fam = product_family();
  FamilyGrid grid;
  grid.exec = exec_of(state);
  const std::vector<double> pi{1.5, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(family_gradient(fam, pi, grid));
  }
  label(state);
}
BENCHMARK(BM_FamilyGradient)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
