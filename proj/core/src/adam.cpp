#include <cmath>

#include "mcns/training.hpp"

namespace mcns {

AdamState::AdamState(const std::vector<const Matrix*>& params, AdamParams hp) : hp_(hp) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const Matrix* p : params) {
    m_.emplace_back(p->rows(), p->cols());
    v_.emplace_back(p->rows(), p->cols());
  }
}

void adam_step(const std::vector<Matrix*>& params, const GradientBuffer& grads, AdamState& state, double lr) {
  if (params.size() != grads.num_tensors() || params.size() != state.m_.size()) {
    throw ArgumentError("adam_step: parameter/gradient/state tensor count mismatch");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    const Matrix& g = grads.tensor(t);
    if (params[t]->rows() != g.rows() || params[t]->cols() != g.cols() || state.m_[t].rows() != g.rows() ||
        state.m_[t].cols() != g.cols()) {
      throw ArgumentError("adam_step: shape mismatch in tensor " + std::to_string(t));
    }
  }

  const AdamParams& hp = state.hp_;
  ++state.step_;
  const double t = static_cast<double>(state.step_);
  const double c1 = 1.0 - std::pow(hp.beta1, t);
  const double c2 = 1.0 - std::pow(hp.beta2, t);

  for (std::size_t ti = 0; ti < params.size(); ++ti) {
    Matrix& p = *params[ti];
    Matrix& m = state.m_[ti];
    Matrix& v = state.v_[ti];
    for (std::size_t r : grads.touched(ti)) {
      auto g = grads.row(ti, r);
      bool any = false;
      for (double x : g) any = any || x != 0.0;
      if (!any) continue;
      auto pr = p.row(r);
      auto mr = m.row(r);
      auto vr = v.row(r);
      for (std::size_t j = 0; j < g.size(); ++j) {
        mr[j] = hp.beta1 * mr[j] + (1.0 - hp.beta1) * g[j];
        vr[j] = hp.beta2 * vr[j] + (1.0 - hp.beta2) * g[j] * g[j];
        const double mhat = mr[j] / c1;
        const double vhat = vr[j] / c2;
        pr[j] -= lr * mhat / (std::sqrt(vhat) + hp.eps);
      }
    }
  }
}

}  // namespace mcns
