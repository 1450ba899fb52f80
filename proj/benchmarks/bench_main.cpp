#include <benchmark/benchmark.h>

#include "dmap/datasets.hpp"
#include "dmap/sge.hpp"
#include "dmap/spectral.hpp"

namespace {

using namespace dmap;

void BM_BuildKernel(benchmark::State& state) {
  const PointCloud cloud = gen_swiss_roll(state.range(0), 0.0, 1);
  KernelConfig c;
  c.t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_kernel(cloud, c).entries.data());
  }
}
BENCHMARK(BM_BuildKernel)->Arg(256)->Arg(512)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SGEAtT(benchmark::State& state) {
  const PointCloud cloud = gen_swiss_roll(state.range(0), 0.0, 1);
  KernelConfig c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sge_at(cloud, c, 1.0).sge);
  }
}
BENCHMARK(BM_SGEAtT)->Arg(256)->Arg(512)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const PointCloud cloud = gen_torus_helix(state.range(0), 3.0, 1.0, 10, 0.02, 6);
  KernelConfig c;
  const TimeGrid grid = default_grid(pairwise_sq_dists(cloud), c.trunc_c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(cloud, c, grid, SelectionPolicy{}).selected_index);
  }
  state.counters["grid_points"] = static_cast<double>(grid.times.size());
}
BENCHMARK(BM_Sweep)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_EmbedCloud(benchmark::State& state) {
  const PointCloud cloud = gen_circle(state.range(0), 0.8, 0.0, 1);
  KernelConfig c;
  c.t = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_cloud(cloud, c, 2).coords.data());
  }
}
BENCHMARK(BM_EmbedCloud)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
