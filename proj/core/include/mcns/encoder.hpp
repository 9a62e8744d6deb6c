#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcns/common.hpp"
#include "mcns/graph.hpp"

namespace mcns {

enum class Role { central, context };
enum class EmbeddingMode { dual, unique };

// Row-sparse gradient storage shaped like an encoder's parameter list.
// Storage is allocated once; clear() only zeroes rows that were touched.
class GradientBuffer {
 public:
  GradientBuffer() = default;
  explicit GradientBuffer(const std::vector<const Matrix*>& shapes);

  // Mutable view of a gradient row; marks it touched.
  std::span<double> row(std::size_t tensor, std::size_t r);
  std::span<const double> row(std::size_t tensor, std::size_t r) const { return grads_[tensor].row(r); }

  std::size_t num_tensors() const { return grads_.size(); }
  const std::vector<std::size_t>& touched(std::size_t tensor) const { return touched_[tensor]; }
  const Matrix& tensor(std::size_t t) const { return grads_[t]; }
  void clear();

 private:
  std::vector<Matrix> grads_;
  std::vector<std::vector<char>> is_touched_;
  std::vector<std::vector<std::size_t>> touched_;
};

// E_theta: maps node ids to d-dimensional vectors and scores pairs by the
// inner product of the central embedding of v with the context embedding of u.
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual std::size_t num_nodes() const = 0;
  virtual std::size_t dim() const = 0;

  virtual std::vector<double> embed(NodeId node, Role role) const = 0;
  virtual double score(NodeId v, NodeId u) const;

  // grad += coeff * d score(v, u) / d theta
  virtual void accumulate_score_gradient(NodeId v, NodeId u, double coeff, GradientBuffer& grad) const = 0;

  virtual std::vector<Matrix*> parameters() = 0;
  std::vector<const Matrix*> parameters() const;

  // N x d table of embed(·, role).
  Matrix table(Role role) const;

  GradientBuffer make_gradient_buffer() const { return GradientBuffer(parameters()); }

 protected:
  void check_node(NodeId node) const;
};

// Embedding lookup table. Dual mode keeps independent central and context
// tables; unique mode aliases both roles to one table.
class LookupEncoder final : public Encoder {
 public:
  LookupEncoder(Matrix central, std::optional<Matrix> context);

  std::size_t num_nodes() const override { return central_.rows(); }
  std::size_t dim() const override { return central_.cols(); }
  EmbeddingMode mode() const { return context_ ? EmbeddingMode::dual : EmbeddingMode::unique; }

  std::span<const double> row(NodeId node, Role role) const;
  std::span<double> mutable_row(NodeId node, Role role);

  std::vector<double> embed(NodeId node, Role role) const override;
  double score(NodeId v, NodeId u) const override;
  void accumulate_score_gradient(NodeId v, NodeId u, double coeff, GradientBuffer& grad) const override;
  std::vector<Matrix*> parameters() override;

 private:
  Matrix central_;
  std::optional<Matrix> context_;
};

// Entries i.i.d. uniform in [-0.5/dim, 0.5/dim].
LookupEncoder init_lookup(std::size_t num_nodes, std::size_t dim, EmbeddingMode mode, std::uint64_t seed);

// GraphSAGE-style encoder with the mean aggregator.
//
// Layer l maps h_{l-1} to ReLU(mean(h_{l-1}(x), h_{l-1}(n_1), ..., h_{l-1}(n_s)) W_l + b_l)
// where n_1..n_s are min(deg(x), sample_size) neighbors drawn with
// replacement. The last layer has no ReLU. Both roles share one embedding.
class SageEncoder final : public Encoder {
 public:
  struct Layer {
    Matrix weight;  // in x out
    Matrix bias;    // 1 x out
  };

  SageEncoder(const Graph& graph, Matrix features, std::vector<Layer> layers, std::size_t sample_size);

  std::size_t num_nodes() const override { return features_.rows(); }
  std::size_t dim() const override { return layers_.back().weight.cols(); }
  std::size_t num_layers() const { return layers_.size(); }
  std::size_t sample_size() const { return sample_size_; }

  // Neighbor samples are a pure function of (seed, node, layer).
  std::vector<double> sage_embed(NodeId node, std::uint64_t seed) const;

  // Seed used by embed/score/gradients; the trainer advances it per step.
  void set_sampling_seed(std::uint64_t seed) { sampling_seed_ = seed; }
  std::uint64_t sampling_seed() const { return sampling_seed_; }

  std::vector<double> embed(NodeId node, Role role) const override;
  void accumulate_score_gradient(NodeId v, NodeId u, double coeff, GradientBuffer& grad) const override;
  std::vector<Matrix*> parameters() override;

  Matrix& features() { return features_; }
  std::vector<Layer>& layers() { return layers_; }

 private:
  std::vector<NodeId> sample_neighbors(NodeId node, std::size_t layer, std::uint64_t seed) const;
  std::vector<double> forward(NodeId node, std::size_t level, std::uint64_t seed) const;
  void backward(NodeId node, std::size_t level, std::uint64_t seed, std::span<const double> upstream,
                GradientBuffer& grad) const;

  const Graph* graph_;
  Matrix features_;
  std::vector<Layer> layers_;
  std::size_t sample_size_;
  std::uint64_t sampling_seed_ = 0;
};

// Free learnable base features of width `feature_dim`, Glorot-uniform weights,
// zero biases. `layer_dims` lists the output width of each layer (1 or 2 entries).
SageEncoder init_sage(const Graph& graph, std::size_t feature_dim, const std::vector<std::size_t>& layer_dims,
                      std::size_t sample_size, std::uint64_t seed);

// ---- embedding files (word2vec text format) ---------------------------------

// "N d" header, then "<name> v1 ... vd" with six decimals.
void write_embeddings(const std::string& path, std::span<const std::string> names, const Matrix& table);

struct EmbeddingFile {
  std::vector<std::string> names;
  Matrix table;
};
EmbeddingFile read_embeddings(const std::string& path);

}  // namespace mcns
