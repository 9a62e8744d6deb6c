#include <algorithm>
#include <numeric>

#include "mcns/evaluation.hpp"
#include "mcns/random.hpp"

namespace mcns {

std::size_t rank_of(double true_score, std::span<const double> candidate_scores) {
  std::size_t rank = 1;
  for (double s : candidate_scores) {
    if (s >= true_score) ++rank;
  }
  return rank;
}

std::size_t rank_against(const Encoder& enc, NodeId v, NodeId u_true, std::span<const NodeId> candidates) {
  const double t = enc.score(v, u_true);
  std::size_t rank = 1;
  for (NodeId c : candidates) {
    if (enc.score(v, c) >= t) ++rank;
  }
  return rank;
}

void summarize_ranks(std::span<const std::size_t> ranks, std::span<const std::size_t> ks, MetricsReport& report) {
  if (ranks.empty()) throw ArgumentError("no ranks to summarize");
  double rr = 0.0;
  for (std::size_t r : ranks) rr += 1.0 / static_cast<double>(r);
  const auto n = static_cast<double>(ranks.size());
  report.metrics["mrr"] = rr / n;
  for (std::size_t k : ks) {
    const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r <= k; });
    report.metrics["hits@" + std::to_string(k)] = static_cast<double>(hits) / n;
  }
}

MetricsReport eval_recommendation(const Encoder& enc, std::span<const Edge> test_pairs, const Graph& train,
                                  const RecommendationOptions& options) {
  if (test_pairs.empty()) throw ArgumentError("no test pairs");
  if (options.M && *options.M == 0) throw ArgumentError("M must be at least 1");
  if (enc.num_nodes() != train.num_nodes()) throw DataError("encoder and graph disagree on the node count");
  const std::size_t n = train.num_nodes();

  std::vector<NodeId> items;
  if (train.is_bipartite()) {
    items = train.nodes_on(Side::I);
  } else {
    items.resize(n);
    std::iota(items.begin(), items.end(), NodeId{0});
  }

  std::vector<std::vector<NodeId>> test_items(n);
  for (const auto& [u, i] : test_pairs) {
    if (u >= n || i >= n) throw DataError("test pair refers to an unknown node");
    test_items[u].push_back(i);
  }
  for (auto& t : test_items) std::sort(t.begin(), t.end());

  std::vector<std::size_t> order(test_pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return test_pairs[a].first < test_pairs[b].first; });

  const Matrix central = enc.table(Role::central);
  const Matrix context = enc.table(Role::context);

  std::vector<std::size_t> ranks(test_pairs.size());
  std::size_t shortfall = 0;
  std::size_t candidate_total = 0;
  std::vector<double> valid_scores;
  std::vector<std::size_t> pick;

  for (std::size_t pos = 0; pos < order.size();) {
    const NodeId user = test_pairs[order[pos]].first;
    std::size_t end = pos;
    while (end < order.size() && test_pairs[order[end]].first == user) ++end;

    const auto urow = central.row(user);
    const auto& held = test_items[user];
    valid_scores.clear();
    for (NodeId it : items) {
      if (it == user || train.has_edge(user, it) || std::binary_search(held.begin(), held.end(), it)) continue;
      valid_scores.push_back(dot(urow, context.row(it)));
    }

    for (std::size_t p = pos; p < end; ++p) {
      const std::size_t idx = order[p];
      const NodeId item = test_pairs[idx].second;
      const double t = dot(urow, context.row(item));
      if (!options.M || *options.M >= valid_scores.size()) {
        if (options.M && *options.M > valid_scores.size()) ++shortfall;
        ranks[idx] = rank_of(t, valid_scores);
        candidate_total += valid_scores.size();
        continue;
      }
      const std::size_t m = *options.M;
      Rng rng(derive_seed(options.seed, idx));
      pick.resize(valid_scores.size());
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      std::size_t rank = 1;
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = j + uniform_index(rng, pick.size() - j);
        std::swap(pick[j], pick[r]);
        if (valid_scores[pick[j]] >= t) ++rank;
      }
      ranks[idx] = rank;
      candidate_total += m;
    }
    pos = end;
  }

  MetricsReport rep;
  rep.seed = options.seed;
  summarize_ranks(ranks, options.ks, rep);
  rep.counts["test_pairs"] = test_pairs.size();
  rep.counts["candidates_total"] = candidate_total;
  rep.counts["shortfall_pairs"] = shortfall;
  rep.config["M"] = options.M ? std::to_string(*options.M) : "ALL";
  return rep;
}

double auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) throw ArgumentError("AUC needs positive and negative scores");
  std::vector<std::pair<double, bool>> all;
  all.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) all.emplace_back(s, true);
  for (double s : neg_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);  // average of 1-based ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (all[t].second) rank_sum += mid;
    }
    i = j;
  }
  const auto np = static_cast<double>(pos_scores.size());
  const auto nn = static_cast<double>(neg_scores.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

MetricsReport eval_link_prediction(const Encoder& enc, const LinkSplit& split) {
  if (split.test_pos.empty() || split.test_neg.empty()) throw ArgumentError("link prediction needs test edges");
  auto score_all = [&](const std::vector<Edge>& pairs) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) out.push_back(0.5 * (enc.score(a, b) + enc.score(b, a)));
    return out;
  };
  const auto pos = score_all(split.test_pos);
  const auto neg = score_all(split.test_neg);
  MetricsReport rep;
  rep.metrics["auc"] = auc(pos, neg);
  rep.counts["test_pos"] = pos.size();
  rep.counts["test_neg"] = neg.size();
  return rep;
}

}  // namespace mcns
