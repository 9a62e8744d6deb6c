#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcns/common.hpp"
#include "mcns/encoder.hpp"
#include "mcns/graph.hpp"

namespace mcns {

struct MetricsReport {
  std::map<std::string, double> metrics;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
};

// 1 + number of candidates scoring at least as high as u_true (ties count
// against the true item).
std::size_t rank_against(const Encoder& enc, NodeId v, NodeId u_true, std::span<const NodeId> candidates);
std::size_t rank_of(double true_score, std::span<const double> candidate_scores);

// Hits@k and MRR over a list of ranks, written into `report`.
void summarize_ranks(std::span<const std::size_t> ranks, std::span<const std::size_t> ks, MetricsReport& report);

struct RecommendationOptions {
  std::optional<std::size_t> M;  // nullopt: rank against all valid items
  std::vector<std::size_t> ks{10, 30};
  std::uint64_t seed = 1;
};

// Test pairs are (user, item). Candidates for a user are item-side nodes of
// `train` with no train or test link to that user. Scores come from the
// encoder's central table for users and context table for items.
MetricsReport eval_recommendation(const Encoder& enc, std::span<const Edge> test_pairs, const Graph& train,
                                  const RecommendationOptions& options);

// Rank-sum AUC; tied scores contribute 1/2.
double auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

// Pairs are scored symmetrically: (score(a,b) + score(b,a)) / 2.
MetricsReport eval_link_prediction(const Encoder& enc, const LinkSplit& split);

struct ClassifierOptions {
  std::size_t epochs = 500;
  double learning_rate = 0.1;
  double l2 = 1e-4;
};

// One-vs-rest logistic regression on embedding rows, top-L_i prediction
// where L_i is node i's true label count. Nodes without labels are ignored.
MetricsReport eval_classification(const Matrix& embeddings, const std::vector<std::vector<std::size_t>>& labels,
                                  std::size_t num_labels, double train_ratio, std::uint64_t seed,
                                  const ClassifierOptions& options = {});

}  // namespace mcns
