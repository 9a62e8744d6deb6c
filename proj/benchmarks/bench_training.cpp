#include <benchmark/benchmark.h>

#include "mcns/encoder.hpp"
#include "mcns/graph.hpp"
#include "mcns/sampling.hpp"
#include "mcns/training.hpp"

using namespace mcns;

namespace {

Graph bench_graph(std::size_t n) {
  Rng rng(5);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) {
    for (int j = 0; j < 3; ++j) edges.push_back({static_cast<NodeId>(uniform_index(rng, v)), v});
  }
  return Graph::from_edges(n, edges);
}

// One DFS-order epoch; items are positive pairs trained.
void BM_DfsEpoch(benchmark::State& state, SamplerKind kind) {
  Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  LookupEncoder enc = init_lookup(g.num_nodes(), 64, EmbeddingMode::dual, 1);
  PositiveSampler pos(g, PositiveKind::walk_window, 5, 40);
  SamplerParams sp;
  sp.kind = kind;
  auto neg = make_negative_sampler(g, sp, 2);
  TrainConfig tc;
  tc.dim = 64;
  tc.epochs = 1;
  std::size_t pairs = 0;
  for (auto _ : state) {
    auto r = train_dfs_order(g, enc, pos, *neg, tc);
    pairs += r.trace.back().pairs;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(pairs));
}

void BM_AdamStep(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  LookupEncoder enc = init_lookup(100000, 128, EmbeddingMode::dual, 1);
  AdamState adam(static_cast<const Encoder&>(enc).parameters());
  GradientBuffer g = enc.make_gradient_buffer();
  for (auto _ : state) {
    state.PauseTiming();
    g.clear();
    for (std::size_t r = 0; r < rows; ++r) g.row(0, (r * 7919) % 100000)[0] = 1.0;
    state.ResumeTiming();
    adam_step(enc.parameters(), g, adam, 1e-3);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows));
}

}  // namespace

BENCHMARK_CAPTURE(BM_DfsEpoch, uniform, SamplerKind::uniform)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DfsEpoch, mcns, SamplerKind::mcns)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdamStep)->Arg(1)->Arg(256);
BENCHMARK_MAIN();
