// Serial reference vs OpenMP kernels. Results are bit-identical across the
// two paths (tested), so only time is compared here.

#include <benchmark/benchmark.h>

#include "raydist/asymptotics/sequences.hpp"
#include "raydist/harmonic/harmonic.hpp"
#include "raydist/mero/mero_map.hpp"
#include "raydist/rootscan/scan.hpp"

using namespace raydist;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }

void BM_SectorSweep(benchmark::State& state) {
  std::vector<asymptotics::UnitTuple> tuples;
  for (std::uint64_t i = 0; i < 200; ++i) tuples.push_back(asymptotics::UnitTuple::random(1, i));
  for (auto _ : state) benchmark::DoNotOptimize(asymptotics::sector_sweep(tuples, 20000, mode(state)));
  label(state);
}
BENCHMARK(BM_SectorSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WalkOnSpheres(benchmark::State& state) {
  const auto domain = harmonic::build_domain_h(0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(harmonic::walk_on_spheres(domain, {0.0, 0.2}, {"gamma"}, 20000, 2, {}, mode(state)));
  label(state);
}
BENCHMARK(BM_WalkOnSpheres)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LocateRoots(benchmark::State& state) {
  const auto f = mero::example1();
  const auto region = rootscan::Region::annulus(0.5, 30.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(rootscan::locate_roots(f, region, mero::Target::one(), {}, mode(state)));
  label(state);
}
BENCHMARK(BM_LocateRoots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
