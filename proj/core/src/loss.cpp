#include <cmath>

#include "mcns/training.hpp"

namespace mcns {

double log_sigmoid(double x) {
  if (x < 0.0) return x - std::log1p(std::exp(x));
  return -std::log1p(std::exp(-x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

NceLoss nce_loss(double s_pos, std::span<const double> s_negs) {
  NceLoss out;
  out.loss = -log_sigmoid(s_pos);
  out.grad_pos = sigmoid(s_pos) - 1.0;
  out.grad_negs.reserve(s_negs.size());
  for (double s : s_negs) {
    // log(1 - s(x)) = log s(-x)
    out.loss -= log_sigmoid(-s);
    out.grad_negs.push_back(sigmoid(s));
  }
  return out;
}

HingeLoss hinge_loss(double s_pos, double s_neg, double margin) {
  const double z = s_neg - s_pos + margin;
  if (z <= 0.0) return {};
  return {z, -1.0, 1.0};
}

}  // namespace mcns
