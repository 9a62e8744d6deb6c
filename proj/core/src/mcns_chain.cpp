#include <algorithm>
#include <cmath>

#include "mcns/sampling.hpp"

namespace mcns {

ProposalDistribution::ProposalDistribution(const Graph& g, const CandidatePool& pool, std::size_t k_local,
                                           std::uint64_t seed)
    : candidates_(pool.nodes().begin(), pool.nodes().end()), local_(g.num_nodes()) {
  Rng rng(seed);
  const bool two_hop = g.is_bipartite();
  std::vector<std::uint32_t> stamp(g.num_nodes(), 0);
  std::uint32_t epoch = 0;
  std::vector<NodeId> near;

  for (NodeId x : candidates_) {
    near.clear();
    ++epoch;
    stamp[x] = epoch;
    if (two_hop) {
      for (NodeId mid : g.neighbors(x)) {
        for (NodeId y : g.neighbors(mid)) {
          if (stamp[y] != epoch && pool.contains(y)) {
            stamp[y] = epoch;
            near.push_back(y);
          }
        }
      }
    } else {
      for (NodeId y : g.neighbors(x)) {
        if (pool.contains(y)) near.push_back(y);
      }
    }
    if (near.size() > k_local) {
      // partial Fisher-Yates: first k_local entries become a uniform subset
      for (std::size_t i = 0; i < k_local; ++i) {
        std::size_t j = i + uniform_index(rng, near.size() - i);
        std::swap(near[i], near[j]);
      }
      near.resize(k_local);
    }
    std::sort(near.begin(), near.end());
    local_[x] = near;
  }
}

ProposalDistribution::ProposalDistribution(std::size_t num_candidates, std::vector<std::vector<NodeId>> local)
    : candidates_(num_candidates), local_(std::move(local)) {
  for (std::size_t i = 0; i < num_candidates; ++i) candidates_[i] = static_cast<NodeId>(i);
  local_.resize(num_candidates);
  for (auto& l : local_) std::sort(l.begin(), l.end());
}

std::span<const NodeId> ProposalDistribution::local(NodeId x) const {
  if (x >= local_.size()) return {};
  return local_[x];
}

double ProposalDistribution::prob(NodeId x, NodeId y) const {
  const double n = static_cast<double>(candidates_.size());
  auto l = local(x);
  if (l.empty()) return 1.0 / n;
  const double near = std::binary_search(l.begin(), l.end(), y) ? 1.0 / static_cast<double>(l.size()) : 0.0;
  return 0.5 / n + 0.5 * near;
}

NodeId ProposalDistribution::sample(NodeId x, Rng& rng) const {
  auto l = local(x);
  if (!l.empty() && uniform01(rng) < 0.5) return l[uniform_index(rng, l.size())];
  return candidates_[uniform_index(rng, candidates_.size())];
}

double mcns_target_weight(const Encoder& enc, const CandidatePool& pool, const McnsParams& params, NodeId v,
                          NodeId u) {
  if (!pool.admits(v, u)) return 0.0;
  return std::pow(std::max(enc.score(v, u), params.epsilon), params.alpha);
}

McnsChain::McnsChain(const CandidatePool& pool, const McnsParams& params, NodeId start)
    : pool_(&pool), params_(params), current_(start) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (!(params.epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (!pool.contains(start)) throw ArgumentError("chain start is not a candidate");
}

void McnsChain::reset(NodeId start) {
  if (!pool_->contains(start)) throw ArgumentError("chain start is not a candidate");
  current_ = start;
}

NodeId McnsChain::step(const Encoder& enc, NodeId v, const ProposalDistribution& q, Rng& rng) {
  const NodeId x = current_;
  const NodeId y = q.sample(x, rng);
  ++steps_;

  const double wx = mcns_target_weight(enc, *pool_, params_, v, x);
  bool accept = false;
  if (wx <= 0.0) {
    // chain sits on an inadmissible node (e.g. the central itself): move on
    accept = true;
  } else {
    const double wy = mcns_target_weight(enc, *pool_, params_, v, y);
    const double ratio = (wy / wx) * (q.prob(y, x) / q.prob(x, y));
    accept = uniform01(rng) < std::min(1.0, ratio);
  }
  if (accept) {
    current_ = y;
    ++accepts_;
  }
  return current_;
}

ChainSchedule::ChainSchedule(const Graph& g, std::uint64_t seed) : graph_(&g), seed_(seed), starts_(central_nodes(g)) {
  if (g.num_nodes() == 0) throw DataError("chain schedule over an empty graph");
  if (starts_.empty()) starts_.push_back(0);
}

std::vector<NodeId> ChainSchedule::pass(std::size_t index) const {
  const Graph& g = *graph_;
  Rng rng(derive_seed(seed_, index, 1));
  const NodeId start = starts_[uniform_index(rng, starts_.size())];
  std::vector<NodeId> seq = dfs_sequence(g, start, derive_seed(seed_, index, 2));
  std::erase_if(seq, [&](NodeId v) {
    if (g.is_bipartite()) return g.side(v) != Side::U;
    return g.degree(v) == 0;
  });
  return seq;
}

void ChainSchedule::begin_pass(McnsChain& chain, const Encoder& enc, NodeId first_central,
                               const ProposalDistribution& q, Rng& rng) const {
  chain.reset(chain.pool().uniform(rng));
  for (std::size_t i = 0; i < chain.params().warmup; ++i) chain.step(enc, first_central, q, rng);
}

}  // namespace mcns
