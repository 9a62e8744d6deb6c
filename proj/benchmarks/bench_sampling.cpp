#include <benchmark/benchmark.h>

#include "mcns/encoder.hpp"
#include "mcns/graph.hpp"
#include "mcns/sampling.hpp"

using namespace mcns;

namespace {

// Bipartite graph with `users` users, 2*users items and ~10 items per user.
Graph bench_graph(std::size_t users) {
  const std::size_t items = 2 * users;
  Rng rng(1);
  std::vector<Edge> edges;
  std::vector<Side> part(users + items, Side::I);
  for (NodeId v = 0; v < users; ++v) {
    part[v] = Side::U;
    for (int j = 0; j < 10; ++j) edges.push_back({v, static_cast<NodeId>(users + uniform_index(rng, items))});
  }
  return Graph::from_edges(users + items, edges, false, part);
}

void BM_NegativeSample(benchmark::State& state, SamplerKind kind) {
  Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  LookupEncoder enc = init_lookup(g.num_nodes(), 64, EmbeddingMode::dual, 2);
  SamplerParams sp;
  sp.kind = kind;
  auto sampler = make_negative_sampler(g, sp, 3);
  const auto users = g.nodes_on(Side::U);
  Rng rng(4);
  sampler->begin_pass(enc, users[0], rng);
  std::size_t i = 0;
  for (auto _ : state) {
    const NodeId v = users[i++ % users.size()];
    benchmark::DoNotOptimize(sampler->sample(enc, v, g.neighbors(v)[0], rng));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Score(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  LookupEncoder enc = init_lookup(1000, dim, EmbeddingMode::dual, 1);
  NodeId v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enc.score(v, (v * 7 + 3) % 1000));
    v = (v + 1) % 1000;
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_DfsSequence(benchmark::State& state) {
  Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dfs_sequence(g, 0, seed++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_nodes()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_NegativeSample, uniform, SamplerKind::uniform)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_NegativeSample, degree_power, SamplerKind::degree_power)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_NegativeSample, dns, SamplerKind::dns)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_NegativeSample, warp, SamplerKind::warp)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_NegativeSample, mcns, SamplerKind::mcns)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Score)->Arg(64)->Arg(256);
BENCHMARK(BM_DfsSequence)->Arg(1000)->Arg(10000);
