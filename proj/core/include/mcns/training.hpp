#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcns/common.hpp"
#include "mcns/encoder.hpp"
#include "mcns/graph.hpp"
#include "mcns/sampling.hpp"

namespace mcns {

// ---- losses ----------------------------------------------------------------

// log(sigmoid(x)) without overflow for large |x|.
double log_sigmoid(double x);
double sigmoid(double x);

struct NceLoss {
  double loss = 0.0;
  double grad_pos = 0.0;
  std::vector<double> grad_negs;
};

// -log s(s_pos) - sum log(1 - s(s_neg)), with derivatives w.r.t. each score.
NceLoss nce_loss(double s_pos, std::span<const double> s_negs);

struct HingeLoss {
  double loss = 0.0;
  double grad_pos = 0.0;
  double grad_neg = 0.0;
};

// max(0, s_neg - s_pos + margin). Zero subgradient at the kink.
HingeLoss hinge_loss(double s_pos, double s_neg, double margin);

// ---- optimizer ---------------------------------------------------------------

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Moments per parameter tensor plus a global step counter. Updates are
// row-sparse: a row whose gradient is all zero keeps its parameters and its
// moments (no decay) in that step.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const std::vector<const Matrix*>& params, AdamParams hp = {});

  const AdamParams& params() const { return hp_; }
  std::uint64_t step() const { return step_; }
  const Matrix& first_moment(std::size_t t) const { return m_[t]; }
  const Matrix& second_moment(std::size_t t) const { return v_[t]; }
  std::size_t num_tensors() const { return m_.size(); }

 private:
  friend void adam_step(const std::vector<Matrix*>& params, const GradientBuffer& grads, AdamState& state,
                        double lr);
  AdamParams hp_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  std::uint64_t step_ = 0;
};

// One bias-corrected Adam step over the touched rows of `grads`.
// Throws ArgumentError on a shape mismatch.
void adam_step(const std::vector<Matrix*>& params, const GradientBuffer& grads, AdamState& state, double lr);

// ---- training loops ----------------------------------------------------------

enum class LossKind { nce, hinge };

std::string to_string(LossKind k);
std::optional<LossKind> parse_loss_kind(const std::string& name);

struct TrainConfig {
  double learning_rate = 1e-3;  // 0 freezes the encoder
  std::size_t dim = 256;
  double margin = 0.1;
  std::size_t batch_size = 256;
  std::size_t negatives = 1;  // k
  std::size_t epochs = 10;
  LossKind loss = LossKind::hinge;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  // Optimizer step after every single negative instead of per (v, k negatives) group.
  bool literal_updates = false;
  // Early stopping patience in epochs; only used with a validation callback.
  std::size_t patience = 5;

  void validate() const;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;      // mean loss per trained positive pair
  std::optional<double> accept_rate;
  std::optional<double> validation;
  std::size_t pairs = 0;
  std::size_t skipped_pairs = 0;
  std::size_t negative_draws = 0;
  std::size_t failed_draws = 0;
  std::size_t optimizer_steps = 0;
};

struct TrainResult {
  std::vector<EpochStats> trace;
  std::size_t best_epoch = 0;  // epoch whose parameters were kept
  bool stopped_early = false;
};

// Validation score, higher is better (e.g. MRR on a held-out slice).
using ValidationFn = std::function<double(const Encoder&)>;

// Centrals are drawn proportional to degree in batches of `batch_size`; each
// takes one positive and k negatives; one optimizer step per batch. An epoch
// covers as many positives as the graph has central-side edge endpoints.
TrainResult train_sampled_nce(const Graph& g, Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives,
                              const TrainConfig& config, const ValidationFn& validate = {});

// Centrals visited in DFS order (one traversal pass per epoch), one positive
// and k negatives per visit, one optimizer step per (v, negatives) group.
// With an MCNS sampler this is the chain-reuse loop.
TrainResult train_dfs_order(const Graph& g, Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives,
                            const TrainConfig& config, const ValidationFn& validate = {});

// DFS-order loop with an MCNS sampler built from `params`.
TrainResult train_mcns(const Graph& g, Encoder& enc, PositiveSampler& positives, const TrainConfig& config,
                       const McnsParams& params, const ValidationFn& validate = {});

// "epoch,loss,accept_rate" rows.
void write_loss_csv(const std::string& path, const std::vector<EpochStats>& trace);

}  // namespace mcns
