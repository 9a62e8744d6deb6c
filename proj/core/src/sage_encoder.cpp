#include <algorithm>
#include <cmath>

#include "mcns/encoder.hpp"
#include "mcns/random.hpp"

namespace mcns {
namespace {

constexpr std::size_t kFeatureTensor = 0;
std::size_t weight_tensor(std::size_t layer) { return 1 + 2 * layer; }
std::size_t bias_tensor(std::size_t layer) { return 2 + 2 * layer; }

}  // namespace

SageEncoder::SageEncoder(const Graph& graph, Matrix features, std::vector<Layer> layers, std::size_t sample_size)
    : graph_(&graph), features_(std::move(features)), layers_(std::move(layers)), sample_size_(sample_size) {
  if (layers_.empty() || layers_.size() > 2) throw ArgumentError("SageEncoder supports 1 or 2 layers");
  if (features_.rows() != graph.num_nodes()) throw ArgumentError("feature rows must match node count");
  std::size_t in = features_.cols();
  for (const auto& l : layers_) {
    if (l.weight.rows() != in) throw ArgumentError("layer input width does not chain");
    if (l.bias.rows() != 1 || l.bias.cols() != l.weight.cols()) throw ArgumentError("bias shape mismatch");
    in = l.weight.cols();
  }
}

std::vector<NodeId> SageEncoder::sample_neighbors(NodeId node, std::size_t layer, std::uint64_t seed) const {
  auto nb = graph_->neighbors(node);
  const std::size_t count = std::min(nb.size(), sample_size_);
  std::vector<NodeId> out;
  out.reserve(count);
  Rng rng(derive_seed(seed, node, layer));
  for (std::size_t i = 0; i < count; ++i) out.push_back(nb[uniform_index(rng, nb.size())]);
  return out;
}

std::vector<double> SageEncoder::forward(NodeId node, std::size_t level, std::uint64_t seed) const {
  if (level == 0) {
    auto r = features_.row(node);
    return {r.begin(), r.end()};
  }
  const Layer& layer = layers_[level - 1];
  std::vector<double> agg = forward(node, level - 1, seed);
  const auto sampled = sample_neighbors(node, level, seed);
  for (NodeId m : sampled) {
    auto h = forward(m, level - 1, seed);
    for (std::size_t i = 0; i < agg.size(); ++i) agg[i] += h[i];
  }
  const double inv = 1.0 / static_cast<double>(sampled.size() + 1);
  for (double& a : agg) a *= inv;

  std::vector<double> out(layer.weight.cols());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = layer.bias(0, j);
  for (std::size_t i = 0; i < agg.size(); ++i) {
    auto w = layer.weight.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += agg[i] * w[j];
  }
  if (level < layers_.size()) {
    for (double& x : out) x = std::max(0.0, x);
  }
  return out;
}

void SageEncoder::backward(NodeId node, std::size_t level, std::uint64_t seed, std::span<const double> upstream,
                           GradientBuffer& grad) const {
  if (level == 0) {
    auto g = grad.row(kFeatureTensor, node);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += upstream[i];
    return;
  }
  const std::size_t li = level - 1;
  const Layer& layer = layers_[li];

  std::vector<NodeId> members{node};
  const auto sampled = sample_neighbors(node, level, seed);
  members.insert(members.end(), sampled.begin(), sampled.end());
  const double inv = 1.0 / static_cast<double>(members.size());

  std::vector<double> agg(layer.weight.rows(), 0.0);
  for (NodeId m : members) {
    auto h = forward(m, level - 1, seed);
    for (std::size_t i = 0; i < agg.size(); ++i) agg[i] += h[i] * inv;
  }

  std::vector<double> dpre(upstream.begin(), upstream.end());
  if (level < layers_.size()) {
    for (std::size_t j = 0; j < dpre.size(); ++j) {
      double pre = layer.bias(0, j);
      for (std::size_t i = 0; i < agg.size(); ++i) pre += agg[i] * layer.weight(i, j);
      if (pre <= 0.0) dpre[j] = 0.0;
    }
  }

  auto gb = grad.row(bias_tensor(li), 0);
  for (std::size_t j = 0; j < dpre.size(); ++j) gb[j] += dpre[j];
  std::vector<double> dagg(agg.size(), 0.0);
  for (std::size_t i = 0; i < agg.size(); ++i) {
    auto gw = grad.row(weight_tensor(li), i);
    auto w = layer.weight.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < dpre.size(); ++j) {
      gw[j] += agg[i] * dpre[j];
      acc += w[j] * dpre[j];
    }
    dagg[i] = acc * inv;
  }
  for (NodeId m : members) backward(m, level - 1, seed, dagg, grad);
}

std::vector<double> SageEncoder::sage_embed(NodeId node, std::uint64_t seed) const {
  check_node(node);
  return forward(node, layers_.size(), seed);
}

std::vector<double> SageEncoder::embed(NodeId node, Role /*role*/) const { return sage_embed(node, sampling_seed_); }

void SageEncoder::accumulate_score_gradient(NodeId v, NodeId u, double coeff, GradientBuffer& grad) const {
  auto hv = embed(v, Role::central);
  auto hu = embed(u, Role::context);
  for (auto& x : hv) x *= coeff;
  for (auto& x : hu) x *= coeff;
  backward(v, layers_.size(), sampling_seed_, hu, grad);
  backward(u, layers_.size(), sampling_seed_, hv, grad);
}

std::vector<Matrix*> SageEncoder::parameters() {
  std::vector<Matrix*> out{&features_};
  for (auto& l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

SageEncoder init_sage(const Graph& graph, std::size_t feature_dim, const std::vector<std::size_t>& layer_dims,
                      std::size_t sample_size, std::uint64_t seed) {
  if (feature_dim == 0 || layer_dims.empty()) throw ArgumentError("SageEncoder needs feature_dim >= 1 and a layer");
  Rng rng(seed);
  Matrix features(graph.num_nodes(), feature_dim);
  const double fb = 0.5 / static_cast<double>(feature_dim);
  for (double& x : features.data()) x = uniform_real(rng, -fb, fb);

  std::vector<SageEncoder::Layer> layers;
  std::size_t in = feature_dim;
  for (std::size_t out : layer_dims) {
    if (out == 0) throw ArgumentError("layer width must be at least 1");
    SageEncoder::Layer l{Matrix(in, out), Matrix(1, out)};
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    for (double& x : l.weight.data()) x = uniform_real(rng, -bound, bound);
    layers.push_back(std::move(l));
    in = out;
  }
  return SageEncoder(graph, std::move(features), std::move(layers), sample_size);
}

}  // namespace mcns
