#include <benchmark/benchmark.h>

#include <cstdint>

#include "sparseflip/analysis.hpp"
#include "sparseflip/flip.hpp"
#include "sparseflip/generators.hpp"
#include "sparseflip/leveling.hpp"
#include "sparseflip/oracle.hpp"
#include "sparseflip/smoothing.hpp"

using namespace sparseflip;

static void BM_FlipRun(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_forest_union(n, 2, 1);
  const SmoothedModel model = SmoothedModel::uniform();
  std::uint64_t seed = 0;
  std::int64_t total_steps = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const WeightAssignment w = sample_weights(model, g, seed++);
    state.ResumeTiming();
    Rng rng(seed);
    const FlipTrace t = run(g, w, all_zeros_cut(n), PivotRule::FirstImproving,
                            std::int64_t{1} << 40, rng);
    total_steps += t.length();
    benchmark::DoNotOptimize(t.steps.data());
  }
  state.counters["steps"] =
      benchmark::Counter(double(total_steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_FlipRun)->RangeMultiplier(4)->Range(64, 4096);

static void BM_FlipRunAnnotated(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_forest_union(n, 2, 1);
  const Leveling lv = peel_partition(g, 2, 2.0);
  const SmoothedModel model = SmoothedModel::uniform();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const WeightAssignment w = sample_weights(model, g, seed++);
    state.ResumeTiming();
    Rng rng(seed);
    TraceAnnotator ann(lv);
    const FlipTrace t = run(g, w, all_zeros_cut(n), PivotRule::FirstImproving,
                            std::int64_t{1} << 40, rng,
                            [&ann](const FlipStep& s) { ann.observe(s); });
    benchmark::DoNotOptimize(ann.annotations().potential_after.data());
    benchmark::DoNotOptimize(t.steps.data());
  }
}
BENCHMARK(BM_FlipRunAnnotated)->RangeMultiplier(4)->Range(64, 1024);

static void BM_PeelPartition(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_preferential_attachment(n, 3, 7);
  for (auto _ : state) {
    const Leveling lv = peel_partition(g, 3, 2.0);
    benchmark::DoNotOptimize(lv.level.data());
  }
}
BENCHMARK(BM_PeelPartition)->RangeMultiplier(4)->Range(256, 16384);

static void BM_Degeneracy(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_preferential_attachment(n, 3, 7);
  for (auto _ : state) {
    const DegeneracyResult d = degeneracy(g);
    benchmark::DoNotOptimize(d.order.data());
  }
}
BENCHMARK(BM_Degeneracy)->RangeMultiplier(4)->Range(256, 16384);

static void BM_SampleWeights(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_forest_union(n, 2, 1);
  const SmoothedModel model = SmoothedModel::uniform();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const WeightAssignment w = sample_weights(model, g, seed++);
    benchmark::DoNotOptimize(w.values.data());
  }
  state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_SampleWeights)->RangeMultiplier(4)->Range(256, 16384);

static void BM_BruteForce(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  const GraphTopology g = gen_forest_union(n, 2, 1);
  const WeightAssignment w = sample_weights(SmoothedModel::uniform(), g, 3);
  for (auto _ : state) {
    const BruteForceResult bf = brute_force(g, w);
    benchmark::DoNotOptimize(bf.max_cut_weight);
  }
}
BENCHMARK(BM_BruteForce)->DenseRange(12, 18, 3);

BENCHMARK_MAIN();
