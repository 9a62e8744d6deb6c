#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mcns/graph.hpp"
#include "mcns/random.hpp"

namespace mcns {
namespace {

struct DisjointSets {
  std::vector<NodeId> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), NodeId{0}); }
  NodeId find(NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

LinkSplit split_link_prediction(const Graph& g, double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ArgumentError("holdout fraction must lie in (0, 1)");
  }
  if (!is_connected(g)) throw DataError("link prediction split requires a connected graph");

  std::vector<Edge> edges = g.edge_list();
  const auto target = static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(edges.size())));
  if (target == 0) throw ArgumentError("holdout target rounds to zero edges");

  Rng rng(seed);
  shuffle(edges, rng);

  // Kruskal over a random edge order yields a random spanning tree; those
  // edges are never removed, so the residual stays connected.
  DisjointSets dsu(g.num_nodes());
  std::vector<Edge> tree;
  std::vector<Edge> removable;
  for (const auto& e : edges) {
    if (dsu.unite(e.first, e.second)) {
      tree.push_back(e);
    } else {
      removable.push_back(e);
    }
  }

  const std::size_t removed = std::min(target, removable.size());
  LinkSplit out;
  out.test_pos.assign(removable.begin(), removable.begin() + static_cast<std::ptrdiff_t>(removed));

  const std::size_t n = g.num_nodes();
  const std::size_t non_edges = n * (n - 1) / 2 - edges.size();
  if (non_edges < removed) {
    throw DataError("graph has " + std::to_string(non_edges) + " non-edges, need " + std::to_string(removed) +
                    " negative test pairs");
  }

  std::set<Edge> drawn;
  while (out.test_neg.size() < removed) {
    auto a = static_cast<NodeId>(uniform_index(rng, n));
    auto b = static_cast<NodeId>(uniform_index(rng, n));
    if (a == b || g.has_edge(a, b)) continue;
    Edge e = std::minmax(a, b);
    if (drawn.insert(e).second) out.test_neg.push_back(e);
  }

  std::vector<Edge> kept = tree;
  kept.insert(kept.end(), removable.begin() + static_cast<std::ptrdiff_t>(removed), removable.end());
  std::optional<std::vector<Side>> parts;
  if (g.is_bipartite()) parts = std::vector<Side>(g.partition().begin(), g.partition().end());
  out.residual = Graph::from_edges(n, kept, false, std::move(parts));
  out.residual.set_names(std::vector<std::string>(g.names().begin(), g.names().end()));

  out.requested_fraction = holdout_fraction;
  out.achieved_fraction = static_cast<double>(removed) / static_cast<double>(edges.size());
  return out;
}

}  // namespace mcns

namespace mcns {

EdgeFold make_edge_fold(const Graph& g, std::size_t fold, std::uint64_t seed, std::size_t parts) {
  if (parts < 3) throw ArgumentError("need at least 3 parts (test, validation, train)");
  if (fold + 1 >= parts) throw ArgumentError("fold must lie in [0, " + std::to_string(parts - 2) + "]");
  std::vector<Edge> edges = g.edge_list();
  if (edges.size() < parts) throw DataError("fewer edges than fold parts");
  if (g.is_bipartite()) {
    for (auto& e : edges) {
      if (g.side(e.first) != Side::U) std::swap(e.first, e.second);
    }
  }
  Rng rng(seed);
  shuffle(edges, rng);

  EdgeFold out;
  std::vector<Edge> kept;
  const std::size_t m = edges.size();
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t lo = p * m / parts;
    const std::size_t hi = (p + 1) * m / parts;
    auto& dst = p == fold ? out.test : p + 1 == parts ? out.validation : kept;
    dst.insert(dst.end(), edges.begin() + static_cast<std::ptrdiff_t>(lo), edges.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  std::optional<std::vector<Side>> side;
  if (g.is_bipartite()) side = std::vector<Side>(g.partition().begin(), g.partition().end());
  out.train = Graph::from_edges(g.num_nodes(), kept, false, std::move(side));
  out.train.set_names(std::vector<std::string>(g.names().begin(), g.names().end()));
  return out;
}

}  // namespace mcns
