#include "fslbm/collision.hpp"
#include "fslbm/dam_break.hpp"
#include "fslbm/field.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace fslbm {
namespace {

void BM_Collide(benchmark::State& state) {
  TrtParams p;
  p.use_nonlinear = state.range(0) != 0;
  p.force = Vec3(1e-6, 0.0, -1e-6);
  Populations f = equilibrium(MacroState{1.01, Vec3(0.02, -0.01, 0.03)}, p, d3q19());
  for (auto _ : state) {
    f = collide(f, p, d3q19());
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Collide)->Arg(0)->Arg(1);

void BM_Stream(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Topology t;
  t.periodic_x = t.periodic_y = t.periodic_z = true;
  const Grid grid(Extent{n, n, n}, t);
  std::vector<double> src(grid.size() * kQ), dst(grid.size() * kQ);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  for (auto& v : src) v = u(rng);
  const std::vector<CellFlag> flags(grid.size(), CellFlag::Liquid);
  for (auto _ : state) {
    stream(src, dst, grid, flags, d3q19());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_Stream)->Arg(16)->Arg(32);

// Full free-surface step of a collapsing column (cells per second).
void BM_FreeSurfaceStep(benchmark::State& state) {
  DamBreakSetup s;
  s.column_width = 40;
  s.column_height = 20;
  s.domain_width = 160;
  s.domain_height = 40;
  s.gravity = 1.25e-4;
  Simulation sim = make_column_simulation(s, state.range(0) ? SurfaceRule::Fsl : SurfaceRule::Fsk);
  for (int i = 0; i < 200; ++i) sim.step();
  for (auto _ : state) sim.step();
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sim.grid().size()));
}
BENCHMARK(BM_FreeSurfaceStep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace fslbm

BENCHMARK_MAIN();
