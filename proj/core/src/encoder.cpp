#include "mcns/encoder.hpp"

#include <algorithm>

namespace mcns {

GradientBuffer::GradientBuffer(const std::vector<const Matrix*>& shapes) {
  for (const Matrix* m : shapes) {
    grads_.emplace_back(m->rows(), m->cols());
    is_touched_.emplace_back(m->rows(), 0);
    touched_.emplace_back();
  }
}

std::span<double> GradientBuffer::row(std::size_t tensor, std::size_t r) {
  if (!is_touched_[tensor][r]) {
    is_touched_[tensor][r] = 1;
    touched_[tensor].push_back(r);
  }
  return grads_[tensor].row(r);
}

void GradientBuffer::clear() {
  for (std::size_t t = 0; t < grads_.size(); ++t) {
    for (std::size_t r : touched_[t]) {
      auto g = grads_[t].row(r);
      std::fill(g.begin(), g.end(), 0.0);
      is_touched_[t][r] = 0;
    }
    touched_[t].clear();
  }
}

double Encoder::score(NodeId v, NodeId u) const { return dot(embed(v, Role::central), embed(u, Role::context)); }

std::vector<const Matrix*> Encoder::parameters() const {
  auto params = const_cast<Encoder*>(this)->parameters();
  return {params.begin(), params.end()};
}

Matrix Encoder::table(Role role) const {
  Matrix out(num_nodes(), dim());
  for (NodeId v = 0; v < num_nodes(); ++v) {
    auto e = embed(v, role);
    std::copy(e.begin(), e.end(), out.row(v).begin());
  }
  return out;
}

void Encoder::check_node(NodeId node) const {
  if (node >= num_nodes()) {
    throw ArgumentError("node " + std::to_string(node) + " out of range (N=" + std::to_string(num_nodes()) + ")");
  }
}

}  // namespace mcns
