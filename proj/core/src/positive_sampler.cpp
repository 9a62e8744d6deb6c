#include <algorithm>

#include "mcns/sampling.hpp"

namespace mcns {

std::vector<NodeId> central_nodes(const Graph& g) {
  if (g.is_bipartite()) return g.nodes_on(Side::U);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) > 0) out.push_back(v);
  }
  return out;
}

PositiveSampler::PositiveSampler(const Graph& g, PositiveKind kind, std::size_t window, std::size_t walk_length)
    : graph_(&g), kind_(kind), window_(window), walk_length_(walk_length) {
  if (window_ == 0) throw ArgumentError("positive window must be at least 1");
  if (walk_length_ < 2) throw ArgumentError("walk_length must be at least 2");
  if (g.num_edges() == 0) throw DataError("positive sampling needs at least one edge");

  if (g.directed_source() && !g.is_bipartite()) {
    arcs_.assign(g.arcs().begin(), g.arcs().end());
  } else {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (g.is_bipartite() && g.side(v) != Side::U) continue;
      for (NodeId u : g.neighbors(v)) arcs_.emplace_back(v, u);
    }
  }
}

void PositiveSampler::refill(Rng& rng) {
  const Graph& g = *graph_;
  cache_.clear();
  cursor_ = 0;
  WalkSet walks = random_walks(g, 1, walk_length_, rng());
  for (const auto& w : walks.walks) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (g.is_bipartite() && g.side(w[i]) != Side::U) continue;
      const std::size_t lo = i >= window_ ? i - window_ : 0;
      const std::size_t hi = std::min(w.size() - 1, i + window_);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i || w[j] == w[i]) continue;
        if (g.is_bipartite() && g.side(w[j]) != Side::I) continue;
        cache_.emplace_back(w[i], w[j]);
      }
    }
  }
  shuffle(cache_, rng);
}

std::pair<NodeId, NodeId> PositiveSampler::sample_pair(Rng& rng) {
  if (kind_ == PositiveKind::direct_edge) return arcs_[uniform_index(rng, arcs_.size())];
  while (cursor_ >= cache_.size()) refill(rng);
  return cache_[cursor_++];
}

std::optional<NodeId> PositiveSampler::sample_context(NodeId v, Rng& rng) const {
  const Graph& g = *graph_;
  if (g.degree(v) == 0) return std::nullopt;
  if (kind_ == PositiveKind::direct_edge) {
    if (g.directed_source() && !g.is_bipartite()) {
      // out-neighbors only
      auto lo = std::lower_bound(arcs_.begin(), arcs_.end(), Edge{v, 0});
      auto hi = std::lower_bound(arcs_.begin(), arcs_.end(), Edge{v + 1, 0});
      if (lo == hi) return std::nullopt;
      return (lo + static_cast<std::ptrdiff_t>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo))))->second;
    }
    auto nb = g.neighbors(v);
    return nb[uniform_index(rng, nb.size())];
  }

  std::size_t steps = 0;
  if (g.is_bipartite()) {
    const std::size_t odd = (window_ + 1) / 2;
    steps = 2 * uniform_index(rng, odd) + 1;
  } else {
    steps = 1 + uniform_index(rng, window_);
  }
  NodeId cur = v;
  for (std::size_t s = 0; s < steps; ++s) {
    auto nb = g.neighbors(cur);
    cur = nb[uniform_index(rng, nb.size())];
  }
  if (cur == v) return g.neighbors(v)[uniform_index(rng, g.degree(v))];
  return cur;
}

}  // namespace mcns
