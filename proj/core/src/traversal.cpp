#include <algorithm>

#include "mcns/graph.hpp"
#include "mcns/random.hpp"

namespace mcns {

std::vector<NodeId> dfs_sequence(const Graph& g, NodeId start, std::optional<std::uint64_t> shuffle_seed) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> seq;
  if (n == 0) return seq;
  if (start >= n) throw ArgumentError("dfs start node out of range");
  seq.reserve(2 * n);

  Rng rng(shuffle_seed.value_or(0));
  std::vector<char> visited(n, 0);

  struct Frame {
    NodeId node;
    std::vector<NodeId> order;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  auto enter = [&](NodeId x) {
    visited[x] = 1;
    seq.push_back(x);
    auto nb = g.neighbors(x);
    Frame f{x, std::vector<NodeId>(nb.begin(), nb.end())};
    if (shuffle_seed) shuffle(f.order, rng);
    stack.push_back(std::move(f));
  };

  auto run_from = [&](NodeId root) {
    enter(root);
    while (!stack.empty()) {
      Frame& top = stack.back();
      while (top.next < top.order.size() && visited[top.order[top.next]]) ++top.next;
      if (top.next < top.order.size()) {
        enter(top.order[top.next++]);
        continue;
      }
      stack.pop_back();
      if (!stack.empty()) seq.push_back(stack.back().node);
    }
  };

  run_from(start);
  for (NodeId v = 0; v < n; ++v) {
    if (!visited[v]) run_from(v);
  }
  return seq;
}

WalkSet random_walks(const Graph& g, std::size_t walks_per_node, std::size_t walk_length, std::uint64_t seed) {
  if (walk_length < 2) throw ArgumentError("walk_length must be at least 2");
  WalkSet out;
  std::vector<NodeId> starts;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == 0) {
      out.skipped_isolated.push_back(v);
    } else {
      starts.push_back(v);
    }
  }
  Rng rng(seed);
  out.walks.reserve(walks_per_node * starts.size());
  for (std::size_t r = 0; r < walks_per_node; ++r) {
    for (NodeId s : starts) {
      std::vector<NodeId> walk;
      walk.reserve(walk_length);
      walk.push_back(s);
      NodeId cur = s;
      while (walk.size() < walk_length) {
        auto nb = g.neighbors(cur);
        cur = nb[uniform_index(rng, nb.size())];
        walk.push_back(cur);
      }
      out.walks.push_back(std::move(walk));
    }
  }
  return out;
}

}  // namespace mcns
