#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcns/encoder.hpp"
#include "mcns/graph.hpp"
#include "mcns/random.hpp"

namespace mcns {

// The nodes negatives are drawn from (the I side of a bipartite graph, all
// nodes otherwise) together with the per-central exclusion rule: the central
// node itself is never a negative; its direct neighbors optionally aren't.
class CandidatePool {
 public:
  explicit CandidatePool(const Graph& g, bool exclude_neighbors = false);

  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId u) const { return u < member_.size() && member_[u]; }
  bool exclude_neighbors() const { return exclude_neighbors_; }

  // Whether u may serve as a negative for central v.
  bool admits(NodeId v, NodeId u) const;

  NodeId uniform(Rng& rng) const { return nodes_[uniform_index(rng, nodes_.size())]; }
  // Uniform over admitted candidates by rejection; nullopt after `max_tries`.
  std::optional<NodeId> uniform_admitted(NodeId v, Rng& rng, std::size_t max_tries = 256) const;

 private:
  const Graph* graph_;
  std::vector<NodeId> nodes_;
  std::vector<char> member_;
  bool exclude_neighbors_;
};

// Central nodes: the U side of a bipartite graph, all non-isolated nodes otherwise.
std::vector<NodeId> central_nodes(const Graph& g);

// ---- positive sampling (p̂_d) -------------------------------------------------

enum class PositiveKind { walk_window, direct_edge };

class PositiveSampler {
 public:
  PositiveSampler(const Graph& g, PositiveKind kind, std::size_t window = 5, std::size_t walk_length = 40);

  PositiveKind kind() const { return kind_; }
  std::size_t window() const { return window_; }

  // Joint draw of a positive pair. walk_window: uniform over the (center,
  // co-window) pairs of the cached walks, regenerated when exhausted;
  // direct_edge: uniform over directed edges. On bipartite graphs only
  // (U, I) pairs are emitted.
  std::pair<NodeId, NodeId> sample_pair(Rng& rng);

  // Conditional draw u ~ p̂_d(.|v). walk_window walks a uniformly chosen
  // number of steps in [1, window] (odd steps only on bipartite graphs).
  std::optional<NodeId> sample_context(NodeId v, Rng& rng) const;

 private:
  void refill(Rng& rng);

  const Graph* graph_;
  PositiveKind kind_;
  std::size_t window_;
  std::size_t walk_length_;
  std::vector<Edge> arcs_;
  std::vector<Edge> cache_;
  std::size_t cursor_ = 0;
};

// ---- static negative distributions --------------------------------------------

// p_n(u) ∝ deg(u)^beta over a candidate set. beta = 0 is uniform (RNS).
class DegreeDist {
 public:
  DegreeDist(const Graph& g, std::span<const NodeId> candidates, double beta);

  double beta() const { return beta_; }
  NodeId sample(Rng& rng) const { return nodes_[sample_cumulative(cumulative_, rng)]; }
  std::span<const NodeId> nodes() const { return nodes_; }
  // Probability of the i-th candidate.
  double probability_at(std::size_t i) const;

 private:
  double beta_;
  std::vector<NodeId> nodes_;
  std::vector<double> cumulative_;
};

inline NodeId sample_degree_power(const DegreeDist& dist, Rng& rng) { return dist.sample(rng); }

// ---- score-aware baselines -------------------------------------------------

// Draws `candidates` admitted nodes uniformly and keeps the highest scoring
// one (lowest id on ties).
std::optional<NodeId> dns_sample(const Encoder& enc, NodeId v, std::size_t candidates, const CandidatePool& pool,
                                 Rng& rng);

// As dns_sample, keeping the lowest scoring candidate.
std::optional<NodeId> inverse_dns_sample(const Encoder& enc, NodeId v, std::size_t candidates,
                                         const CandidatePool& pool, Rng& rng);

struct WarpDraw {
  std::optional<NodeId> node;
  std::size_t tries = 0;
};

// Uniform rejection sampling until score(v,c) - score(v,u_pos) + margin > 0.
WarpDraw warp_sample(const Encoder& enc, NodeId v, NodeId u_pos, double margin, std::size_t max_tries,
                     const CandidatePool& pool, Rng& rng);

// ---- Metropolis-Hastings negative sampling -------------------------------------

// q(y|x): with probability 1/2 uniform over the candidate pool, otherwise
// uniform over a short list of x's nearest candidates. Nearest means one-hop
// neighbors, or two-hop same-side neighbors when candidates are one side of a
// bipartite graph (a one-hop neighbor is never a candidate there).
class ProposalDistribution {
 public:
  ProposalDistribution(const Graph& g, const CandidatePool& pool, std::size_t k_local, std::uint64_t seed);
  // Explicit local lists over candidates 0..num_candidates-1 (identity pool).
  ProposalDistribution(std::size_t num_candidates, std::vector<std::vector<NodeId>> local);

  std::size_t num_candidates() const { return candidates_.size(); }
  std::span<const NodeId> local(NodeId x) const;

  double prob(NodeId x, NodeId y) const;
  NodeId sample(NodeId x, Rng& rng) const;

 private:
  std::vector<NodeId> candidates_;
  std::vector<std::vector<NodeId>> local_;  // indexed by node id, sorted
};

inline double proposal_prob(const ProposalDistribution& q, NodeId x, NodeId y) { return q.prob(x, y); }

struct McnsParams {
  double alpha = 0.75;
  double epsilon = 1e-4;
  std::size_t k_local = 10;
  std::size_t warmup = 20;
};

// Self-contrast target weight max(score(v,u), epsilon)^alpha, and 0 for
// nodes the pool does not admit as negatives of v.
double mcns_target_weight(const Encoder& enc, const CandidatePool& pool, const McnsParams& params, NodeId v,
                          NodeId u);

// Markov chain state x of the MCNS sampler.
class McnsChain {
 public:
  McnsChain(const CandidatePool& pool, const McnsParams& params, NodeId start);

  NodeId current() const { return current_; }
  void reset(NodeId start);
  const McnsParams& params() const { return params_; }
  const CandidatePool& pool() const { return *pool_; }

  std::size_t steps() const { return steps_; }
  std::size_t accepts() const { return accepts_; }
  double acceptance_rate() const { return steps_ ? static_cast<double>(accepts_) / static_cast<double>(steps_) : 0.0; }
  void reset_counters() { steps_ = accepts_ = 0; }

  // One Metropolis-Hastings transition targeting w(.) for central v; returns
  // the (possibly unmoved) state.
  NodeId step(const Encoder& enc, NodeId v, const ProposalDistribution& q, Rng& rng);

 private:
  const CandidatePool* pool_;
  McnsParams params_;
  NodeId current_;
  std::size_t steps_ = 0;
  std::size_t accepts_ = 0;
};

inline NodeId mcns_step(McnsChain& chain, const Encoder& enc, NodeId v, const ProposalDistribution& q, Rng& rng) {
  return chain.step(enc, v, q, rng);
}

// DFS-ordered central nodes for MCNS chain reuse. Pass p traverses from a
// seeded start with a seeded neighbor shuffle; on bipartite graphs only the
// U-side entries are kept.
class ChainSchedule {
 public:
  ChainSchedule(const Graph& g, std::uint64_t seed);

  std::vector<NodeId> pass(std::size_t index) const;

  // Re-initializes the chain at a random candidate and runs `warmup` steps
  // against `first_central`.
  void begin_pass(McnsChain& chain, const Encoder& enc, NodeId first_central, const ProposalDistribution& q,
                  Rng& rng) const;

 private:
  const Graph* graph_;
  std::uint64_t seed_;
  std::vector<NodeId> starts_;
};

// ---- strategy selection used by the training loops ---------------------------

enum class SamplerKind { uniform, degree_power, dns, warp, inverse_dns, mcns };

std::string to_string(SamplerKind k);
std::optional<SamplerKind> parse_sampler_kind(const std::string& name);
std::vector<std::string> sampler_names();

struct SamplerParams {
  SamplerKind kind = SamplerKind::mcns;
  double beta = 0.75;
  std::size_t dns_candidates = 5;
  std::size_t warp_max_tries = 100;
  double warp_margin = 0.1;
  bool exclude_neighbors = false;
  McnsParams mcns;
};

struct SamplerStats {
  std::size_t draws = 0;
  std::size_t failures = 0;
  std::size_t mh_steps = 0;
  std::size_t mh_accepts = 0;
  std::size_t warp_tries = 0;
};

// Per-worker negative sampler state; clone() gives an independent copy.
class NegativeSampler {
 public:
  virtual ~NegativeSampler() = default;

  virtual SamplerKind kind() const = 0;
  virtual std::unique_ptr<NegativeSampler> clone() const = 0;

  // Hook called at the start of each traversal pass.
  virtual void begin_pass(const Encoder& /*enc*/, NodeId /*first_central*/, Rng& /*rng*/) {}
  // One negative for (v, u_pos); nullopt when the strategy gives up.
  virtual std::optional<NodeId> sample(const Encoder& enc, NodeId v, NodeId u_pos, Rng& rng) = 0;

  const SamplerStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 protected:
  SamplerStats stats_;
};

std::unique_ptr<NegativeSampler> make_negative_sampler(const Graph& g, const SamplerParams& params,
                                                       std::uint64_t seed);

}  // namespace mcns
