#include <benchmark/benchmark.h>

#include "seedq/cascade.hpp"
#include "seedq/generators.hpp"
#include "seedq/oracles.hpp"
#include "seedq/probe.hpp"
#include "seedq/sketch_seed.hpp"
#include "seedq/spread_seed.hpp"

namespace {

using namespace seedq;

const Graph& bench_graph() {
  static const Graph g = gen_preferential_attachment(5000, 4, 1, 0.05);
  return g;
}

void BM_SimulateIc(benchmark::State& state) {
  const Graph& g = bench_graph();
  IcSimulator sim(g);
  Rng rng(1);
  const NodeId seeds[] = {0, 1, 2, 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(sim.run(seeds, rng).size());
}
BENCHMARK(BM_SimulateIc);

void BM_Probe(benchmark::State& state) {
  const Graph& g = bench_graph();
  ProbeParams params;
  params.rho = 0.02;
  params.copies = static_cast<std::size_t>(state.range(0));
  params.tau = 500;
  Rng rng(2);
  for (auto _ : state) {
    EdgeQueryOracle oracle(g);
    benchmark::DoNotOptimize(probe(oracle, params, rng).num_groups());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Probe)->Arg(16)->Arg(128);

void BM_SeedFromSketch(benchmark::State& state) {
  const Graph& g = bench_graph();
  ProbeParams params;
  params.rho = 0.02;
  params.copies = 128;
  params.tau = 500;
  Rng rng(3);
  EdgeQueryOracle oracle(g);
  const Sketch sketch = probe(oracle, params, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seed_from_sketch(sketch, 10, 0.05, rng).seeds.size());
  }
}
BENCHMARK(BM_SeedFromSketch);

void BM_SpreadRound(benchmark::State& state) {
  const Graph& g = bench_graph();
  SpreadQueryOracle oracle(g);
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spread_round(oracle, {}, static_cast<std::size_t>(state.range(0)), rng).counts.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpreadRound)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
