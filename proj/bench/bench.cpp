// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "heaplab/classify.hpp"
#include "heaplab/io.hpp"

using namespace heaplab;

namespace {

// Two periods of the twelve-cell heap, as a finite poset.
const FinitePoset& slab() {
  static const FinitePoset P = [] {
    const LoadedInput in = load_input(std::string(HEAPLAB_FIXTURES) + "/fig1.json");
    return in.heap->materialize_window(0, 1).poset;
  }();
  return P;
}

void relations(benchmark::State& state, bool parallel) {
  const SplitLattice L = SplitLattice::enumerate(slab());
  const WeightFunction mu = mu_weights(L);
  const OperatorContext ctx(L.graph(), &mu);
  const auto rels = relation_instances(slab().graph(), relation_sets(AlgebraKind::g_derived));
  for (auto _ : state) {
    auto r = parallel ? verify_relations_parallel(ctx, rels) : verify_relations(ctx, rels);
    benchmark::DoNotOptimize(r);
  }
  state.counters["splits"] = L.size();
  state.counters["relations"] = static_cast<double>(rels.size());
}

void harness(benchmark::State& state, int jobs) {
  GeneratorConfig cfg;
  cfg.max_elements = 3;
  cfg.max_colors = 2;
  cfg.exact_size = false;
  const auto instances = generate_instances(cfg);
  HarnessOptions opt;
  opt.jobs = jobs;
  for (auto _ : state) {
    auto s = run_harness(instances, opt);
    benchmark::DoNotOptimize(s);
  }
  state.counters["instances"] = static_cast<double>(instances.size());
}

}  // namespace

BENCHMARK_CAPTURE(relations, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(relations, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(harness, jobs1, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(harness, jobs4, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
