#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcns/common.hpp"

namespace mcns {

// Positive and negative conditional distributions of one central node over N
// outcomes, plus the number of negatives per positive.
struct CategoricalPair {
  std::vector<double> p_d;
  std::vector<double> p_n;
  std::size_t k = 1;

  std::size_t size() const { return p_d.size(); }
  // Throws ArgumentError unless both vectors are nonnegative, equally long,
  // sum to 1 within 1e-12, and k >= 1.
  void validate() const;
};

// Normalizes raw nonnegative weights into a probability vector.
std::vector<double> normalize(std::vector<double> weights);

// theta*_u = -log(k p_n(u) / p_d(u)). Outcomes with p_d(u) = 0 < p_n(u) get -inf.
// Throws DomainError if p_n(u) = 0 < p_d(u).
std::vector<double> optimal_logits(const CategoricalPair& pair);

// Per-outcome asymptotic MSE (1/T)(1/p_d - 1 + 1/(k p_n) - 1/k).
// Throws DomainError on a zero-probability outcome.
std::vector<double> risk_prediction(const CategoricalPair& pair, std::size_t T);

struct RiskModel {
  std::vector<double> m;  // k p_d p_n / (p_d + k p_n)
  std::size_t T = 1;
};

RiskModel risk_model(const CategoricalPair& pair, std::size_t T);
// (1/T)(1/m_u - (1 + 1/k)), the diagonal of the limiting covariance.
std::vector<double> risk_from_model(const RiskModel& model, std::size_t k);

struct FitOptions {
  double tolerance = 1e-8;  // gradient norm
  std::size_t max_iterations = 100000;
};

struct FitResult {
  std::vector<double> logits;       // +-inf on outcomes missing one side
  std::vector<double> pos_weight;   // positive counts (or mass)
  std::vector<double> neg_weight;   // negative counts (or mass)
  std::vector<char> drawn;          // both sides observed
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

// Minimizes sum_u -(a_u log s(theta_u) + b_u log s(-theta_u)) / scale by
// gradient descent. Each coordinate takes step 1/L_u with L_u its curvature
// bound (a_u + b_u) / (4 scale). Coordinates with a_u = 0 or b_u = 0 have no
// finite minimizer and are left at -inf / +inf.
FitResult minimize_nce_objective(std::vector<double> pos_weight, std::vector<double> neg_weight, double scale,
                                 const FitOptions& options = {});

// Population objective J(theta) with weights p_d and k p_n.
FitResult minimize_population_objective(const CategoricalPair& pair, const FitOptions& options = {});

// Draws T positives from p_d and kT negatives from p_n and fits the empirical objective.
FitResult fit_single_node(const CategoricalPair& pair, std::size_t T, std::uint64_t seed,
                          const FitOptions& options = {});

struct RiskEstimate {
  std::vector<double> mse;               // NaN where an outcome was never drawn
  std::vector<std::size_t> drawn_trials;
  std::size_t trials = 0;
};

// Mean of (theta_T,u - theta*_u)^2 over the trials in which u was drawn.
RiskEstimate empirical_risk(const CategoricalPair& pair, std::size_t T, std::size_t trials, std::uint64_t seed,
                            const FitOptions& options = {});

struct SublinearReport {
  std::vector<double> p_n;
  std::vector<double> theta;
  bool ordering_ok = false;       // theta* sorted like p_d
  double slope = 0.0;             // least-squares slope of theta* against log p_d
  double max_residual = 0.0;      // max |theta* - (slope log p_d + intercept)|
  bool risk_inverse_ok = false;   // predicted risk sorted opposite to p_d
  std::size_t tie_groups = 0;     // groups of equal p_d values (weak ordering there)
};

// Builds p_n proportional to p_d^alpha (or an explicit p_n) and checks the monotonicity
// and slope structure of theta*.
SublinearReport sublinear_check(const std::vector<double>& p_d, double alpha, std::size_t k);
SublinearReport sublinear_check_with(const std::vector<double>& p_d, const std::vector<double>& p_n, std::size_t k);

// ---- full verification suite ------------------------------------------------

struct TheoryOptions {
  std::size_t T = 1000;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  double alpha = 0.75;
  std::size_t random_pairs = 100;
};

struct TheoryCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct TheoryReport {
  TheoryOptions options;
  std::vector<TheoryCheck> checks;
  bool all_pass() const;
};

TheoryReport verify_theory(const TheoryOptions& options);

}  // namespace mcns
