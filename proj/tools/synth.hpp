#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcns/graph.hpp"

namespace mcns::cli {

// Barabasi-Albert: a clique on m+1 seed nodes, then each new node links to m
// distinct existing nodes chosen proportional to degree.
std::vector<Edge> synth_ba(std::size_t n, std::size_t m, std::uint64_t seed);
std::vector<Edge> synth_path(std::size_t n);
std::vector<Edge> synth_star(std::size_t n);

struct BipartiteEdges {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<Edge> edges;  // (left index, right index)
};

// Each (left, right) pair is linked with probability p; every node gets at
// least one edge so no side is isolated.
BipartiteEdges synth_bipartite(std::size_t left, std::size_t right, double p, std::uint64_t seed);

}  // namespace mcns::cli
