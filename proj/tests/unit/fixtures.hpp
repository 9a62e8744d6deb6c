#pragma once

#include <vector>

#include "mcns/graph.hpp"
#include "mcns/random.hpp"
#include "synth.hpp"

namespace mcns::fx {

inline Graph graph_of(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

inline Graph path_graph(std::size_t n) { return graph_of(n, cli::synth_path(n)); }
inline Graph star_graph(std::size_t n) { return graph_of(n, cli::synth_star(n)); }
inline Graph ba_graph(std::size_t n, std::size_t m, std::uint64_t seed) { return graph_of(n, cli::synth_ba(n, m, seed)); }

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v < n; ++v) e.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return graph_of(n, e);
}

// Random labelled tree: node v > 0 attaches to a uniform earlier node.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(static_cast<NodeId>(uniform_index(rng, v)), v);
  return graph_of(n, e);
}

// Users 0..left-1 tagged U, items left..left+right-1 tagged I.
inline Graph bipartite_graph(std::size_t left, std::size_t right, double p, std::uint64_t seed) {
  auto b = cli::synth_bipartite(left, right, p, seed);
  std::vector<Edge> e;
  for (auto [a, c] : b.edges) e.emplace_back(a, static_cast<NodeId>(left + c));
  std::vector<Side> side(left + right, Side::I);
  for (std::size_t i = 0; i < left; ++i) side[i] = Side::U;
  return Graph::from_edges(left + right, e, false, side);
}

inline std::vector<NodeId> neighbors_of(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  return {nb.begin(), nb.end()};
}

}  // namespace mcns::fx

#include <cmath>
#include <functional>

#include "mcns/encoder.hpp"

namespace mcns::fx {

// ||analytic - numeric|| / max(||analytic||, ||numeric||) over every parameter,
// with central differences of step h on `objective`.
inline double gradient_relative_error(Encoder& enc, const std::function<double()>& objective,
                                      const GradientBuffer& analytic, double h = 1e-5) {
  auto params = enc.parameters();
  double diff2 = 0.0, a2 = 0.0, n2 = 0.0;
  for (std::size_t t = 0; t < params.size(); ++t) {
    auto data = params[t]->data();
    const std::size_t cols = params[t]->cols();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double saved = data[i];
      data[i] = saved + h;
      const double up = objective();
      data[i] = saved - h;
      const double down = objective();
      data[i] = saved;
      const double numeric = (up - down) / (2 * h);
      const double a = analytic.tensor(t)(i / cols, i % cols);
      diff2 += (a - numeric) * (a - numeric);
      a2 += a * a;
      n2 += numeric * numeric;
    }
  }
  const double scale = std::sqrt(std::max(a2, n2));
  return scale == 0.0 ? 0.0 : std::sqrt(diff2) / scale;
}

}  // namespace mcns::fx
