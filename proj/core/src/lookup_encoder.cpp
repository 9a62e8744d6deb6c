#include <algorithm>

#include "mcns/encoder.hpp"
#include "mcns/random.hpp"

namespace mcns {

LookupEncoder::LookupEncoder(Matrix central, std::optional<Matrix> context)
    : central_(std::move(central)), context_(std::move(context)) {
  if (central_.cols() == 0) throw ArgumentError("embedding dimension must be at least 1");
  if (context_ && (context_->rows() != central_.rows() || context_->cols() != central_.cols())) {
    throw ArgumentError("central and context tables differ in shape");
  }
}

std::span<const double> LookupEncoder::row(NodeId node, Role role) const {
  check_node(node);
  return (role == Role::context && context_) ? context_->row(node) : central_.row(node);
}

std::span<double> LookupEncoder::mutable_row(NodeId node, Role role) {
  check_node(node);
  return (role == Role::context && context_) ? context_->row(node) : central_.row(node);
}

std::vector<double> LookupEncoder::embed(NodeId node, Role role) const {
  auto r = row(node, role);
  return {r.begin(), r.end()};
}

double LookupEncoder::score(NodeId v, NodeId u) const {
  return dot(central_.row(v), context_ ? context_->row(u) : central_.row(u));
}

void LookupEncoder::accumulate_score_gradient(NodeId v, NodeId u, double coeff, GradientBuffer& grad) const {
  const std::size_t ctx_tensor = context_ ? 1 : 0;
  auto cv = central_.row(v);
  auto xu = context_ ? context_->row(u) : central_.row(u);
  auto gv = grad.row(0, v);
  for (std::size_t i = 0; i < cv.size(); ++i) gv[i] += coeff * xu[i];
  auto gu = grad.row(ctx_tensor, u);
  for (std::size_t i = 0; i < cv.size(); ++i) gu[i] += coeff * cv[i];
}

std::vector<Matrix*> LookupEncoder::parameters() {
  if (context_) return {&central_, &*context_};
  return {&central_};
}

LookupEncoder init_lookup(std::size_t num_nodes, std::size_t dim, EmbeddingMode mode, std::uint64_t seed) {
  if (dim == 0) throw ArgumentError("embedding dimension must be at least 1");
  Rng rng(seed);
  const double bound = 0.5 / static_cast<double>(dim);
  auto fill = [&](Matrix& m) {
    for (double& x : m.data()) x = uniform_real(rng, -bound, bound);
  };
  Matrix central(num_nodes, dim);
  fill(central);
  std::optional<Matrix> context;
  if (mode == EmbeddingMode::dual) {
    context.emplace(num_nodes, dim);
    fill(*context);
  }
  return LookupEncoder(std::move(central), std::move(context));
}

}  // namespace mcns
