#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcns/common.hpp"

namespace mcns {

// Bipartite side tag. U holds the central (user) nodes, I the context (item)
// nodes negatives are drawn from.
enum class Side : std::uint8_t { U, I };

using Edge = std::pair<NodeId, NodeId>;

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// Immutable compressed adjacency over node ids 0..N-1.
//
// Adjacency is always stored symmetrized; for directed inputs the original
// arcs are kept separately so the central/context transformation can honour
// direction.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list over [0, num_nodes). Self-loops and duplicates
  // are dropped. If `partition` is given every edge must cross it.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges, bool directed = false,
                          std::optional<std::vector<Side>> partition = std::nullopt);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  // Number of undirected edges in the symmetrized storage.
  std::size_t num_edges() const { return adjacency_.size() / 2; }
  // Directed edge count of the input: 2|E| for undirected sources, the number
  // of distinct arcs for directed ones.
  std::size_t num_directed_edges() const;

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId a, NodeId b) const;

  bool directed_source() const { return directed_; }
  // Original arcs of a directed source (empty when undirected).
  std::span<const Edge> arcs() const { return arcs_; }
  // Every stored undirected edge once, as (min, max).
  std::vector<Edge> edge_list() const;

  bool is_bipartite() const { return !partition_.empty(); }
  Side side(NodeId v) const { return partition_[v]; }
  std::span<const Side> partition() const { return partition_; }
  // Nodes tagged `s`, ascending.
  std::vector<NodeId> nodes_on(Side s) const;

  // External ids by compact id. Synthesized as decimal strings when absent.
  const std::string& name(NodeId v) const { return names_[v]; }
  std::span<const std::string> names() const { return names_; }
  void set_names(std::vector<std::string> names);

  const LoadStats& load_stats() const { return stats_; }
  void set_load_stats(const LoadStats& s) { stats_ = s; }

  bool operator==(const Graph& o) const {
    return offsets_ == o.offsets_ && adjacency_ == o.adjacency_ && partition_ == o.partition_ &&
           directed_ == o.directed_ && arcs_ == o.arcs_ && names_ == o.names_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Side> partition_;
  std::vector<Edge> arcs_;
  std::vector<std::string> names_;
  bool directed_ = false;
  LoadStats stats_;
};

bool is_connected(const Graph& g);

// ---- ingestion -------------------------------------------------------------

// Reads "src dst [weight]" lines (tab or space separated, '#' comments).
// Ids are compacted by first appearance; the weight column is ignored.
Graph load_edge_list(const std::string& path, bool directed = false,
                     const std::optional<std::string>& partition_path = std::nullopt);

// Same as load_edge_list on an in-memory buffer; `source` names it in errors.
Graph parse_edge_list(const std::string& text, bool directed = false,
                      const std::optional<std::string>& partition_text = std::nullopt,
                      const std::string& source = "<memory>");

// Per-node label sets from "node<TAB>l1,l2,..." lines. Nodes absent from the
// file get an empty set. Label strings are interned to dense ids.
struct LabelSet {
  std::vector<std::vector<std::size_t>> node_labels;
  std::vector<std::string> label_names;
};
LabelSet load_labels(const std::string& path, const Graph& g);
LabelSet parse_labels(const std::string& text, const Graph& g);

// Writes the graph's undirected edges (or arcs, if directed) with names.
void write_edge_list(const Graph& g, const std::string& path);

// ---- traversals ------------------------------------------------------------

// DFS traversal sequence in which the current node is re-appended after each
// child returns, so consecutive entries are adjacent. Components not reached
// from `start` are restarted from the lowest-id unvisited node. Neighbor order
// is shuffled with `shuffle_seed`, or ascending when it is nullopt.
std::vector<NodeId> dfs_sequence(const Graph& g, NodeId start,
                                 std::optional<std::uint64_t> shuffle_seed);

struct WalkSet {
  std::vector<std::vector<NodeId>> walks;
  std::vector<NodeId> skipped_isolated;
};

// Uniform-neighbor random walks, `walks_per_node` from every non-isolated node.
WalkSet random_walks(const Graph& g, std::size_t walks_per_node, std::size_t walk_length,
                     std::uint64_t seed);

// ---- link prediction split ----------------------------------------------------

struct LinkSplit {
  Graph residual;
  std::vector<Edge> test_pos;
  std::vector<Edge> test_neg;
  double requested_fraction = 0.0;
  double achieved_fraction = 0.0;
};

// Removes ~holdout_fraction of the edges while keeping a seeded random
// spanning tree, then draws the same number of non-edges as negatives.
LinkSplit split_link_prediction(const Graph& g, double holdout_fraction, std::uint64_t seed);

// ---- recommendation folds ----------------------------------------------------

// Seeded uniform partition of the edges into `parts` slices. Fold f tests on
// slice f, validates on the last slice and trains on the others. On bipartite
// graphs pairs are oriented (U, I).
struct EdgeFold {
  Graph train;
  std::vector<Edge> test;
  std::vector<Edge> validation;
};
EdgeFold make_edge_fold(const Graph& g, std::size_t fold, std::uint64_t seed, std::size_t parts = 11);

// ---- unique embedding transformation -----------------------------------------

// Splits node i into central i and context N+i; arc i->j becomes (i, N+j).
// Centrals are tagged U, contexts I.
Graph to_bipartite_contrast(const Graph& g);

}  // namespace mcns
