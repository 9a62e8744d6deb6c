#include <algorithm>
#include <cmath>

#include "mcns/sampling.hpp"

namespace mcns {

CandidatePool::CandidatePool(const Graph& g, bool exclude_neighbors)
    : graph_(&g), member_(g.num_nodes(), 0), exclude_neighbors_(exclude_neighbors) {
  if (g.is_bipartite()) {
    nodes_ = g.nodes_on(Side::I);
  } else {
    nodes_.resize(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) nodes_[v] = v;
  }
  if (nodes_.empty()) throw DataError("negative candidate set is empty");
  for (NodeId u : nodes_) member_[u] = 1;
}

bool CandidatePool::admits(NodeId v, NodeId u) const {
  if (u == v || !contains(u)) return false;
  return !(exclude_neighbors_ && graph_->has_edge(v, u));
}

std::optional<NodeId> CandidatePool::uniform_admitted(NodeId v, Rng& rng, std::size_t max_tries) const {
  for (std::size_t t = 0; t < max_tries; ++t) {
    NodeId u = uniform(rng);
    if (admits(v, u)) return u;
  }
  return std::nullopt;
}

DegreeDist::DegreeDist(const Graph& g, std::span<const NodeId> candidates, double beta)
    : beta_(beta), nodes_(candidates.begin(), candidates.end()) {
  if (nodes_.empty()) throw DataError("degree distribution over an empty candidate set");
  cumulative_.reserve(nodes_.size());
  double total = 0.0;
  for (NodeId v : nodes_) {
    const auto d = static_cast<double>(g.degree(v));
    if (d == 0.0 && beta < 0.0) {
      throw DomainError("deg^beta undefined for zero-degree node " + g.name(v) + " with beta < 0");
    }
    const double w = std::pow(d, beta);
    if (!std::isfinite(w)) throw DomainError("non-finite degree weight");
    total += w;
    cumulative_.push_back(total);
  }
  if (total <= 0.0) throw DomainError("all degree weights are zero");
  for (double& c : cumulative_) c /= total;
}

double DegreeDist::probability_at(std::size_t i) const {
  return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
}

namespace {

template <typename Better>
std::optional<NodeId> select_among(const Encoder& enc, NodeId v, std::size_t candidates, const CandidatePool& pool,
                                   Rng& rng, Better better) {
  if (candidates == 0) throw ArgumentError("candidate size must be at least 1");
  if (pool.size() == 0) throw DataError("empty candidate set");
  std::optional<NodeId> best;
  double best_score = 0.0;
  for (std::size_t i = 0; i < candidates; ++i) {
    auto c = pool.uniform_admitted(v, rng);
    if (!c) continue;
    const double s = enc.score(v, *c);
    if (!best || better(s, best_score) || (s == best_score && *c < *best)) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

}  // namespace

std::optional<NodeId> dns_sample(const Encoder& enc, NodeId v, std::size_t candidates, const CandidatePool& pool,
                                 Rng& rng) {
  return select_among(enc, v, candidates, pool, rng, [](double a, double b) { return a > b; });
}

std::optional<NodeId> inverse_dns_sample(const Encoder& enc, NodeId v, std::size_t candidates,
                                         const CandidatePool& pool, Rng& rng) {
  return select_among(enc, v, candidates, pool, rng, [](double a, double b) { return a < b; });
}

WarpDraw warp_sample(const Encoder& enc, NodeId v, NodeId u_pos, double margin, std::size_t max_tries,
                     const CandidatePool& pool, Rng& rng) {
  if (max_tries == 0) throw ArgumentError("warp max_tries must be at least 1");
  WarpDraw out;
  const double s_pos = enc.score(v, u_pos);
  while (out.tries < max_tries) {
    ++out.tries;
    auto c = pool.uniform_admitted(v, rng);
    if (c && enc.score(v, *c) - s_pos + margin > 0.0) {
      out.node = c;
      break;
    }
  }
  return out;
}

// ---- strategy objects -------------------------------------------------------

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::uniform: return "uniform";
    case SamplerKind::degree_power: return "degree_power";
    case SamplerKind::dns: return "dns";
    case SamplerKind::warp: return "warp";
    case SamplerKind::inverse_dns: return "inverse_dns";
    case SamplerKind::mcns: return "mcns";
  }
  return "?";
}

std::vector<std::string> sampler_names() { return {"uniform", "degree_power", "dns", "warp", "inverse_dns", "mcns"}; }

std::optional<SamplerKind> parse_sampler_kind(const std::string& name) {
  for (auto k : {SamplerKind::uniform, SamplerKind::degree_power, SamplerKind::dns, SamplerKind::warp,
                 SamplerKind::inverse_dns, SamplerKind::mcns}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

class UniformSampler final : public NegativeSampler {
 public:
  explicit UniformSampler(std::shared_ptr<const CandidatePool> pool) : pool_(std::move(pool)) {}
  SamplerKind kind() const override { return SamplerKind::uniform; }
  std::unique_ptr<NegativeSampler> clone() const override { return std::make_unique<UniformSampler>(*this); }
  std::optional<NodeId> sample(const Encoder&, NodeId v, NodeId, Rng& rng) override {
    ++stats_.draws;
    auto u = pool_->uniform_admitted(v, rng);
    if (!u) ++stats_.failures;
    return u;
  }

 private:
  std::shared_ptr<const CandidatePool> pool_;
};

class DegreePowerSampler final : public NegativeSampler {
 public:
  DegreePowerSampler(std::shared_ptr<const CandidatePool> pool, std::shared_ptr<const DegreeDist> dist)
      : pool_(std::move(pool)), dist_(std::move(dist)) {}
  SamplerKind kind() const override { return SamplerKind::degree_power; }
  std::unique_ptr<NegativeSampler> clone() const override { return std::make_unique<DegreePowerSampler>(*this); }
  std::optional<NodeId> sample(const Encoder&, NodeId v, NodeId, Rng& rng) override {
    ++stats_.draws;
    for (int t = 0; t < 256; ++t) {
      NodeId u = dist_->sample(rng);
      if (pool_->admits(v, u)) return u;
    }
    ++stats_.failures;
    return std::nullopt;
  }

 private:
  std::shared_ptr<const CandidatePool> pool_;
  std::shared_ptr<const DegreeDist> dist_;
};

class CandidateSelectSampler final : public NegativeSampler {
 public:
  CandidateSelectSampler(std::shared_ptr<const CandidatePool> pool, std::size_t candidates, bool inverse)
      : pool_(std::move(pool)), candidates_(candidates), inverse_(inverse) {}
  SamplerKind kind() const override { return inverse_ ? SamplerKind::inverse_dns : SamplerKind::dns; }
  std::unique_ptr<NegativeSampler> clone() const override { return std::make_unique<CandidateSelectSampler>(*this); }
  std::optional<NodeId> sample(const Encoder& enc, NodeId v, NodeId, Rng& rng) override {
    ++stats_.draws;
    auto u = inverse_ ? inverse_dns_sample(enc, v, candidates_, *pool_, rng)
                      : dns_sample(enc, v, candidates_, *pool_, rng);
    if (!u) ++stats_.failures;
    return u;
  }

 private:
  std::shared_ptr<const CandidatePool> pool_;
  std::size_t candidates_;
  bool inverse_;
};

class WarpSampler final : public NegativeSampler {
 public:
  WarpSampler(std::shared_ptr<const CandidatePool> pool, double margin, std::size_t max_tries)
      : pool_(std::move(pool)), margin_(margin), max_tries_(max_tries) {}
  SamplerKind kind() const override { return SamplerKind::warp; }
  std::unique_ptr<NegativeSampler> clone() const override { return std::make_unique<WarpSampler>(*this); }
  std::optional<NodeId> sample(const Encoder& enc, NodeId v, NodeId u_pos, Rng& rng) override {
    ++stats_.draws;
    auto d = warp_sample(enc, v, u_pos, margin_, max_tries_, *pool_, rng);
    stats_.warp_tries += d.tries;
    if (!d.node) ++stats_.failures;
    return d.node;
  }

 private:
  std::shared_ptr<const CandidatePool> pool_;
  double margin_;
  std::size_t max_tries_;
};

class McnsSampler final : public NegativeSampler {
 public:
  McnsSampler(const Graph& g, std::shared_ptr<const CandidatePool> pool,
              std::shared_ptr<const ProposalDistribution> q, const McnsParams& params, std::uint64_t seed)
      : pool_(std::move(pool)),
        q_(std::move(q)),
        schedule_(std::make_shared<ChainSchedule>(g, seed)),
        chain_(*pool_, params, pool_->nodes().front()) {}

  SamplerKind kind() const override { return SamplerKind::mcns; }
  std::unique_ptr<NegativeSampler> clone() const override { return std::make_unique<McnsSampler>(*this); }

  void begin_pass(const Encoder& enc, NodeId first_central, Rng& rng) override {
    schedule_->begin_pass(chain_, enc, first_central, *q_, rng);
    // warm-up transitions are not counted as sampling steps
    chain_.reset_counters();
  }

  std::optional<NodeId> sample(const Encoder& enc, NodeId v, NodeId, Rng& rng) override {
    ++stats_.draws;
    const std::size_t a0 = chain_.accepts();
    NodeId x = chain_.step(enc, v, *q_, rng);
    ++stats_.mh_steps;
    stats_.mh_accepts += chain_.accepts() - a0;
    if (!pool_->admits(v, x)) {
      ++stats_.failures;
      return std::nullopt;
    }
    return x;
  }

  const McnsChain& chain() const { return chain_; }

 private:
  std::shared_ptr<const CandidatePool> pool_;
  std::shared_ptr<const ProposalDistribution> q_;
  std::shared_ptr<const ChainSchedule> schedule_;
  McnsChain chain_;
};

}  // namespace

std::unique_ptr<NegativeSampler> make_negative_sampler(const Graph& g, const SamplerParams& params,
                                                       std::uint64_t seed) {
  auto pool = std::make_shared<const CandidatePool>(g, params.exclude_neighbors);
  switch (params.kind) {
    case SamplerKind::uniform:
      return std::make_unique<UniformSampler>(pool);
    case SamplerKind::degree_power:
      return std::make_unique<DegreePowerSampler>(pool,
                                                  std::make_shared<const DegreeDist>(g, pool->nodes(), params.beta));
    case SamplerKind::dns:
      return std::make_unique<CandidateSelectSampler>(pool, params.dns_candidates, false);
    case SamplerKind::inverse_dns:
      return std::make_unique<CandidateSelectSampler>(pool, params.dns_candidates, true);
    case SamplerKind::warp:
      return std::make_unique<WarpSampler>(pool, params.warp_margin, params.warp_max_tries);
    case SamplerKind::mcns: {
      const auto& m = params.mcns;
      if (!(m.alpha > 0.0 && m.alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
      if (!(m.epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
      auto q = std::make_shared<const ProposalDistribution>(g, *pool, m.k_local, derive_seed(seed, 0x9a));
      return std::make_unique<McnsSampler>(g, pool, std::move(q), m, seed);
    }
  }
  throw ArgumentError("unknown sampler");
}

}  // namespace mcns
