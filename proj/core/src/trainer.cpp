#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "mcns/training.hpp"

namespace mcns {

std::string to_string(LossKind k) { return k == LossKind::nce ? "nce" : "hinge"; }

std::optional<LossKind> parse_loss_kind(const std::string& name) {
  if (name == "nce") return LossKind::nce;
  if (name == "hinge") return LossKind::hinge;
  return std::nullopt;
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) throw ArgumentError("learning_rate must be >= 0");
  if (!(margin >= 0.0)) throw ArgumentError("margin must be >= 0");
  if (negatives == 0) throw ArgumentError("negatives per positive (k) must be at least 1");
  if (batch_size == 0) throw ArgumentError("batch_size must be at least 1");
  if (epochs == 0) throw ArgumentError("epochs must be at least 1");
  if (workers == 0) throw ArgumentError("workers must be at least 1");
  if (literal_updates && workers > 1) throw ArgumentError("literal per-negative updates need a single worker");
}

namespace {

struct Group {
  NodeId v = 0;
  NodeId u = 0;
  std::vector<NodeId> negs;
  bool skipped = false;
};

struct Worker {
  std::unique_ptr<NegativeSampler> owned;  // empty for worker 0, which uses the caller's sampler
  NegativeSampler* sampler = nullptr;
  Rng rng;
};

class Engine {
 public:
  Engine(Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives, const TrainConfig& config)
      : enc_(enc),
        positives_(positives),
        config_(config),
        params_(enc.parameters()),
        grads_(enc.make_gradient_buffer()),
        adam_(static_cast<const Encoder&>(enc).parameters()) {
    sage_ = dynamic_cast<SageEncoder*>(&enc);
    workers_.resize(config.workers);
    workers_[0].sampler = &negatives;
    for (std::size_t w = 1; w < workers_.size(); ++w) {
      workers_[w].owned = negatives.clone();
      workers_[w].sampler = workers_[w].owned.get();
    }
  }

  // Runs one epoch over `units`; each unit is the list of centrals feeding one optimizer step.
  EpochStats run_epoch(std::size_t epoch, const std::vector<std::vector<NodeId>>& units) {
    EpochStats st;
    st.epoch = epoch;
    for (std::size_t w = 0; w < workers_.size(); ++w) {
      workers_[w].rng.seed(derive_seed(config_.seed, epoch, 1 + w));
      workers_[w].sampler->reset_stats();
    }
    if (units.empty()) return st;
    set_sage_seed(epoch, 0);
    for (auto& w : workers_) w.sampler->begin_pass(enc_, units.front().front(), w.rng);

    double loss_sum = 0.0;
    if (config_.literal_updates) {
      std::size_t idx = 0;
      for (const auto& unit : units) {
        set_sage_seed(epoch, ++idx);
        for (NodeId v : unit) loss_sum += literal_group(v, st);
      }
    } else if (workers_.size() == 1) {
      std::size_t idx = 0;
      for (const auto& unit : units) {
        set_sage_seed(epoch, ++idx);
        std::vector<Group> groups;
        groups.reserve(unit.size());
        for (NodeId v : unit) groups.push_back(produce(v, workers_[0]));
        loss_sum += apply(groups, st);
      }
    } else {
      loss_sum = parallel_epoch(epoch, units, st);
    }

    std::size_t steps = 0, accepts = 0;
    for (const auto& w : workers_) {
      const auto& s = w.sampler->stats();
      st.negative_draws += s.draws;
      st.failed_draws += s.failures;
      steps += s.mh_steps;
      accepts += s.mh_accepts;
    }
    if (steps > 0) st.accept_rate = static_cast<double>(accepts) / static_cast<double>(steps);
    st.loss = st.pairs ? loss_sum / static_cast<double>(st.pairs) : 0.0;
    return st;
  }

  std::vector<Matrix> snapshot() const {
    std::vector<Matrix> out;
    for (const Matrix* p : params_) out.push_back(*p);
    return out;
  }
  void restore(const std::vector<Matrix>& snap) {
    for (std::size_t i = 0; i < params_.size(); ++i) *params_[i] = snap[i];
  }

 private:
  void set_sage_seed(std::size_t epoch, std::size_t unit) {
    if (sage_) sage_->set_sampling_seed(derive_seed(config_.seed ^ 0x5a6eULL, epoch, unit));
  }

  Group produce(NodeId v, Worker& w) const {
    Group gr;
    gr.v = v;
    auto u = positives_.sample_context(v, w.rng);
    if (!u) {
      gr.skipped = true;
      return gr;
    }
    gr.u = *u;
    gr.negs.reserve(config_.negatives);
    for (std::size_t i = 0; i < config_.negatives; ++i) {
      if (auto x = w.sampler->sample(enc_, v, gr.u, w.rng)) gr.negs.push_back(*x);
    }
    gr.skipped = gr.negs.empty();
    return gr;
  }

  // Accumulates the loss gradient of one group into grads_; returns its loss.
  double accumulate(const Group& gr) {
    const double s_pos = enc_.score(gr.v, gr.u);
    double loss = 0.0;
    if (config_.loss == LossKind::nce) {
      std::vector<double> s_negs;
      s_negs.reserve(gr.negs.size());
      for (NodeId x : gr.negs) s_negs.push_back(enc_.score(gr.v, x));
      NceLoss l = nce_loss(s_pos, s_negs);
      loss = l.loss;
      enc_.accumulate_score_gradient(gr.v, gr.u, l.grad_pos, grads_);
      for (std::size_t i = 0; i < gr.negs.size(); ++i) {
        enc_.accumulate_score_gradient(gr.v, gr.negs[i], l.grad_negs[i], grads_);
      }
    } else {
      double pos_coeff = 0.0;
      for (NodeId x : gr.negs) {
        HingeLoss h = hinge_loss(s_pos, enc_.score(gr.v, x), config_.margin);
        loss += h.loss;
        if (h.grad_neg != 0.0) enc_.accumulate_score_gradient(gr.v, x, h.grad_neg, grads_);
        pos_coeff += h.grad_pos;
      }
      if (pos_coeff != 0.0) enc_.accumulate_score_gradient(gr.v, gr.u, pos_coeff, grads_);
    }
    return loss;
  }

  void step(EpochStats& st) {
    if (config_.learning_rate > 0.0) adam_step(params_, grads_, adam_, config_.learning_rate);
    grads_.clear();
    ++st.optimizer_steps;
  }

  double apply(const std::vector<Group>& groups, EpochStats& st) {
    double loss = 0.0;
    bool any = false;
    for (const Group& gr : groups) {
      if (gr.skipped) {
        ++st.skipped_pairs;
        continue;
      }
      loss += accumulate(gr);
      ++st.pairs;
      any = true;
    }
    if (any) step(st);
    return loss;
  }

  double literal_group(NodeId v, EpochStats& st) {
    Worker& w = workers_[0];
    auto u = positives_.sample_context(v, w.rng);
    if (!u) {
      ++st.skipped_pairs;
      return 0.0;
    }
    double loss = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < config_.negatives; ++i) {
      auto x = w.sampler->sample(enc_, v, *u, w.rng);
      if (!x) continue;
      Group one{v, *u, {*x}, false};
      loss += accumulate(one);
      step(st);
      any = true;
    }
    if (any) {
      ++st.pairs;
    } else {
      ++st.skipped_pairs;
    }
    return loss;
  }

  // Rounds of a parallel produce phase (read-only on parameters, one sampler
  // clone and rng per worker) followed by a single-writer apply phase.
  double parallel_epoch(std::size_t epoch, const std::vector<std::vector<NodeId>>& units, EpochStats& st) {
    const std::size_t nw = workers_.size();
    const std::size_t round = nw * 16;
    double loss = 0.0;
    std::vector<std::vector<Group>> produced;
    for (std::size_t begin = 0; begin < units.size(); begin += round) {
      const std::size_t end = std::min(units.size(), begin + round);
      set_sage_seed(epoch, 1 + begin / round);
      produced.assign(end - begin, {});
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < nw; ++w) {
        threads.emplace_back([&, w] {
          for (std::size_t i = begin + w; i < end; i += nw) {
            auto& out = produced[i - begin];
            for (NodeId v : units[i]) out.push_back(produce(v, workers_[w]));
          }
        });
      }
      for (auto& t : threads) t.join();
      for (const auto& groups : produced) loss += apply(groups, st);
    }
    return loss;
  }

  Encoder& enc_;
  PositiveSampler& positives_;
  const TrainConfig& config_;
  SageEncoder* sage_ = nullptr;
  std::vector<Matrix*> params_;
  GradientBuffer grads_;
  AdamState adam_;
  std::vector<Worker> workers_;
};

template <typename UnitsFn>
TrainResult run_training(Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives,
                         const TrainConfig& config, const ValidationFn& validate, UnitsFn make_units) {
  config.validate();
  Engine engine(enc, positives, negatives, config);
  TrainResult result;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Matrix> best_params;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    EpochStats st = engine.run_epoch(epoch, make_units(epoch));
    if (validate) {
      const double score = validate(enc);
      st.validation = score;
      if (score > best) {
        best = score;
        best_params = engine.snapshot();
        result.best_epoch = epoch;
        since_best = 0;
      } else {
        ++since_best;
      }
    } else {
      result.best_epoch = epoch;
    }
    result.trace.push_back(st);
    if (validate && since_best >= config.patience) {
      result.stopped_early = epoch < config.epochs;
      break;
    }
  }
  if (validate && !best_params.empty()) engine.restore(best_params);
  return result;
}

}  // namespace

TrainResult train_sampled_nce(const Graph& g, Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives,
                              const TrainConfig& config, const ValidationFn& validate) {
  const auto centrals = central_nodes(g);
  if (centrals.empty()) throw DataError("no central nodes to train on");
  std::size_t epoch_size = 0;
  for (NodeId v : centrals) epoch_size += g.degree(v);
  const DegreeDist by_degree(g, centrals, 1.0);

  auto make_units = [&](std::size_t epoch) {
    Rng rng(derive_seed(config.seed, epoch, 0));
    std::vector<std::vector<NodeId>> units;
    for (std::size_t done = 0; done < epoch_size; done += config.batch_size) {
      const std::size_t m = std::min(config.batch_size, epoch_size - done);
      std::vector<NodeId> batch(m);
      for (auto& v : batch) v = by_degree.sample(rng);
      units.push_back(std::move(batch));
    }
    return units;
  };
  return run_training(enc, positives, negatives, config, validate, make_units);
}

TrainResult train_dfs_order(const Graph& g, Encoder& enc, PositiveSampler& positives, NegativeSampler& negatives,
                            const TrainConfig& config, const ValidationFn& validate) {
  const ChainSchedule schedule(g, derive_seed(config.seed, 0xdf5));
  auto make_units = [&](std::size_t epoch) {
    std::vector<std::vector<NodeId>> units;
    for (NodeId v : schedule.pass(epoch - 1)) units.push_back({v});
    if (units.empty()) throw DataError("DFS pass produced no central nodes");
    return units;
  };
  return run_training(enc, positives, negatives, config, validate, make_units);
}

TrainResult train_mcns(const Graph& g, Encoder& enc, PositiveSampler& positives, const TrainConfig& config,
                       const McnsParams& params, const ValidationFn& validate) {
  SamplerParams sp;
  sp.kind = SamplerKind::mcns;
  sp.mcns = params;
  auto sampler = make_negative_sampler(g, sp, derive_seed(config.seed, 0x3c));
  return train_dfs_order(g, enc, positives, *sampler, config, validate);
}

void write_loss_csv(const std::string& path, const std::vector<EpochStats>& trace) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "epoch,loss,accept_rate\n";
  out.precision(10);
  for (const auto& s : trace) {
    out << s.epoch << ',' << s.loss << ',';
    if (s.accept_rate) {
      out << *s.accept_rate;
    } else {
      out << "nan";
    }
    out << '\n';
  }
}

}  // namespace mcns
