#include "mcns/graph.hpp"

#include <algorithm>
#include <queue>

namespace mcns {

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges, bool directed,
                        std::optional<std::vector<Side>> partition) {
  Graph g;
  g.directed_ = directed;

  if (partition && partition->size() != num_nodes) {
    throw ArgumentError("partition size does not match node count");
  }

  std::vector<Edge> sym;
  sym.reserve(edges.size() * 2);
  std::size_t self_loops = 0;
  for (const auto& [a, b] : edges) {
    if (a >= num_nodes || b >= num_nodes) throw ArgumentError("edge endpoint out of range");
    if (a == b) {
      ++self_loops;
      continue;
    }
    if (partition && (*partition)[a] == (*partition)[b]) {
      throw DataError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                      " does not cross the bipartite partition");
    }
    sym.emplace_back(a, b);
    sym.emplace_back(b, a);
    if (directed) g.arcs_.emplace_back(a, b);
  }
  std::sort(sym.begin(), sym.end());
  const std::size_t before = sym.size();
  sym.erase(std::unique(sym.begin(), sym.end()), sym.end());

  if (directed) {
    std::sort(g.arcs_.begin(), g.arcs_.end());
    g.arcs_.erase(std::unique(g.arcs_.begin(), g.arcs_.end()), g.arcs_.end());
  }

  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& e : sym) ++g.offsets_[e.first + 1];
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.reserve(sym.size());
  for (const auto& e : sym) g.adjacency_.push_back(e.second);

  if (partition) g.partition_ = std::move(*partition);

  g.names_.reserve(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) g.names_.push_back(std::to_string(i));

  g.stats_.edges_read = edges.size();
  g.stats_.self_loops_dropped = self_loops;
  g.stats_.duplicates_dropped = (before - sym.size()) / 2;
  return g;
}

std::size_t Graph::num_directed_edges() const {
  return directed_ ? arcs_.size() : adjacency_.size();
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId v = 0; v < num_nodes(); ++v) {
    for (NodeId u : neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

std::vector<NodeId> Graph::nodes_on(Side s) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < partition_.size(); ++v) {
    if (partition_[v] == s) out.push_back(v);
  }
  return out;
}

void Graph::set_names(std::vector<std::string> names) {
  if (names.size() != num_nodes()) throw ArgumentError("name table size does not match node count");
  names_ = std::move(names);
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
    }
  }
  return reached == n;
}

Graph to_bipartite_contrast(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<Edge> edges;
  edges.reserve(g.num_directed_edges());
  if (g.directed_source()) {
    for (const auto& [i, j] : g.arcs()) edges.emplace_back(i, static_cast<NodeId>(n + j));
  } else {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j : g.neighbors(i)) edges.emplace_back(i, static_cast<NodeId>(n + j));
    }
  }
  std::vector<Side> parts(2 * n, Side::I);
  std::fill(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(n), Side::U);

  Graph out = Graph::from_edges(2 * n, edges, false, std::move(parts));
  std::vector<std::string> names;
  names.reserve(2 * n);
  for (NodeId i = 0; i < n; ++i) names.push_back("v:" + g.name(i));
  for (NodeId i = 0; i < n; ++i) names.push_back("u:" + g.name(i));
  out.set_names(std::move(names));
  return out;
}

}  // namespace mcns
