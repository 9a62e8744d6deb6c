#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcns/evaluation.hpp"
#include "mcns/random.hpp"

namespace mcns {
namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct Binary {
  std::vector<double> w;
  double b = 0.0;
  bool trained = false;
};

Binary fit_binary(const Matrix& x, const std::vector<std::size_t>& rows, const std::vector<char>& y,
                  const ClassifierOptions& o) {
  const std::size_t d = x.cols();
  Binary m;
  m.w.assign(d, 0.0);
  m.trained = true;
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  std::vector<double> gw(d);
  for (std::size_t e = 0; e < o.epochs; ++e) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto xi = x.row(rows[i]);
      const double err = logistic(dot(xi, m.w) + m.b) - (y[i] ? 1.0 : 0.0);
      for (std::size_t j = 0; j < d; ++j) gw[j] += err * xi[j];
      gb += err;
    }
    for (std::size_t j = 0; j < d; ++j) m.w[j] -= o.learning_rate * (gw[j] * inv_n + o.l2 * m.w[j]);
    m.b -= o.learning_rate * gb * inv_n;
  }
  return m;
}

}  // namespace

MetricsReport eval_classification(const Matrix& embeddings, const std::vector<std::vector<std::size_t>>& labels,
                                  std::size_t num_labels, double train_ratio, std::uint64_t seed,
                                  const ClassifierOptions& options) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw ArgumentError("train_ratio must lie in (0, 1)");
  if (labels.size() != embeddings.rows()) throw DataError("label table and embeddings disagree on the node count");

  std::vector<std::size_t> labeled;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t l : labels[i]) {
      if (l >= num_labels) throw DataError("label id out of range");
    }
    if (!labels[i].empty()) labeled.push_back(i);
  }
  if (labeled.size() < 2) throw DataError("need at least two labeled nodes");
  Rng rng(seed);
  shuffle(labeled, rng);
  auto n_train = static_cast<std::size_t>(std::llround(train_ratio * static_cast<double>(labeled.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, labeled.size() - 1);
  const std::vector<std::size_t> train(labeled.begin(), labeled.begin() + static_cast<std::ptrdiff_t>(n_train));
  const std::vector<std::size_t> test(labeled.begin() + static_cast<std::ptrdiff_t>(n_train), labeled.end());

  auto has = [&](std::size_t node, std::size_t l) {
    return std::find(labels[node].begin(), labels[node].end(), l) != labels[node].end();
  };

  std::vector<Binary> models(num_labels);
  std::vector<char> y(train.size());
  for (std::size_t l = 0; l < num_labels; ++l) {
    bool any = false;
    for (std::size_t i = 0; i < train.size(); ++i) {
      y[i] = has(train[i], l);
      any = any || y[i];
    }
    if (any) models[l] = fit_binary(embeddings, train, y, options);
  }

  std::vector<std::size_t> tp(num_labels, 0), fp(num_labels, 0), fn(num_labels, 0);
  std::vector<std::pair<double, std::size_t>> scored(num_labels);
  for (std::size_t node : test) {
    auto x = embeddings.row(node);
    for (std::size_t l = 0; l < num_labels; ++l) {
      const double s = models[l].trained ? dot(x, models[l].w) + models[l].b
                                         : -std::numeric_limits<double>::infinity();
      scored[l] = {s, l};
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t want = labels[node].size();
    std::vector<char> predicted(num_labels, 0);
    for (std::size_t r = 0; r < want && r < num_labels; ++r) {
      if (models[scored[r].second].trained) predicted[scored[r].second] = 1;
    }
    for (std::size_t l = 0; l < num_labels; ++l) {
      const bool truth = has(node, l);
      if (predicted[l] && truth) ++tp[l];
      if (predicted[l] && !truth) ++fp[l];
      if (!predicted[l] && truth) ++fn[l];
    }
  }

  std::size_t TP = 0, FP = 0, FN = 0;
  double macro = 0.0;
  std::size_t macro_labels = 0;
  for (std::size_t l = 0; l < num_labels; ++l) {
    TP += tp[l];
    FP += fp[l];
    FN += fn[l];
    const std::size_t denom = 2 * tp[l] + fp[l] + fn[l];
    if (denom == 0) continue;
    macro += 2.0 * static_cast<double>(tp[l]) / static_cast<double>(denom);
    ++macro_labels;
  }
  MetricsReport rep;
  rep.seed = seed;
  const std::size_t micro_denom = 2 * TP + FP + FN;
  rep.metrics["micro_f1"] = micro_denom ? 2.0 * static_cast<double>(TP) / static_cast<double>(micro_denom) : 0.0;
  rep.metrics["macro_f1"] = macro_labels ? macro / static_cast<double>(macro_labels) : 0.0;
  rep.counts["train_nodes"] = train.size();
  rep.counts["test_nodes"] = test.size();
  rep.counts["labels"] = num_labels;
  rep.config["train_ratio"] = std::to_string(train_ratio);
  return rep;
}

}  // namespace mcns
