#include <benchmark/benchmark.h>

#include "cr3kit/curvature.hpp"
#include "cr3kit/deform.hpp"

using namespace cr3kit;

namespace {

void flatness(benchmark::State& state, bool parallel) {
  const SasakianStructure s = structure_of(build_model("perturbed"));
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(flatness_test(s, grid, parallel).max_phi);
  state.SetItemsProcessed(state.iterations() * grid * grid);
}

void holder(benchmark::State& state, bool parallel) {
  const SasakiChart flat = build_model("flat");
  const Field f = parse_field("1 + 0.5*sin(2*3.141592653589793*x)*cos(2*3.141592653589793*y)");
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(holder_volume_check(flat, f, nodes, parallel).margin);
  state.SetItemsProcessed(state.iterations() * nodes * nodes);
}

}  // namespace

BENCHMARK_CAPTURE(flatness, serial, false)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(flatness, parallel, true)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(holder, serial, false)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(holder, parallel, true)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
