#include "synth.hpp"

#include <algorithm>

#include "mcns/random.hpp"

namespace mcns::cli {

std::vector<Edge> synth_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw ArgumentError("ba: m must be at least 1");
  if (n < m + 1) throw ArgumentError("ba: n must be at least m + 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeId> ends;  // node repeated once per incident edge
  for (NodeId a = 0; a <= m; ++a) {
    for (NodeId b = a + 1; b <= m; ++b) {
      edges.emplace_back(a, b);
      ends.push_back(a);
      ends.push_back(b);
    }
  }
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      NodeId t = ends[uniform_index(rng, ends.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, v);
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  return edges;
}

std::vector<Edge> synth_path(std::size_t n) {
  if (n < 2) throw ArgumentError("path: n must be at least 2");
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return edges;
}

std::vector<Edge> synth_star(std::size_t n) {
  if (n < 2) throw ArgumentError("star: n must be at least 2");
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return edges;
}

BipartiteEdges synth_bipartite(std::size_t left, std::size_t right, double p, std::uint64_t seed) {
  if (left == 0 || right == 0 || left + right < 2) throw ArgumentError("bipartite: both sides need nodes");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("bipartite: p must lie in [0, 1]");
  Rng rng(seed);
  BipartiteEdges out{left, right, {}};
  std::vector<char> right_seen(right, 0);
  for (NodeId a = 0; a < left; ++a) {
    bool any = false;
    for (NodeId b = 0; b < right; ++b) {
      if (uniform01(rng) < p) {
        out.edges.emplace_back(a, b);
        right_seen[b] = 1;
        any = true;
      }
    }
    if (!any) {
      auto b = static_cast<NodeId>(uniform_index(rng, right));
      out.edges.emplace_back(a, b);
      right_seen[b] = 1;
    }
  }
  for (NodeId b = 0; b < right; ++b) {
    if (!right_seen[b]) out.edges.emplace_back(static_cast<NodeId>(uniform_index(rng, left)), b);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace mcns::cli
