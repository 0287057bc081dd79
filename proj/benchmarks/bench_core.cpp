#include <benchmark/benchmark.h>

#include "frontlab/critical.hpp"
#include "frontlab/model.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/phaseplane.hpp"

namespace {

using namespace frontlab;

void BM_shoot(benchmark::State& state) {
  const ModelParams p = validate_params(3.0, 3.0, 1.0, 2.0);
  const double c = 1.0 + 0.25 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shoot(p, c));
  }
}
BENCHMARK(BM_shoot)->DenseRange(0, 4);

void BM_cbar(benchmark::State& state) {
  const ModelParams p = validate_params(3.0, 5.0, 3.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbar(p));
  }
}
BENCHMARK(BM_cbar)->Unit(benchmark::kMillisecond);

void BM_pde_step(benchmark::State& state) {
  const ModelParams p = validate_params(3.0, 3.0, 1.0, 2.0);
  const Grid g = make_grid(static_cast<double>(state.range(0)), 0.05);
  Field f = initial_condition(IcKind::Heaviside, g);
  const double dt = 0.4 * cfl_bound(p, g.dx);
  for (auto _ : state) {
    f = step(p, f, dt, g);
    benchmark::DoNotOptimize(f.u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_pde_step)->RangeMultiplier(2)->Range(20, 160);

}  // namespace
BENCHMARK_MAIN();
