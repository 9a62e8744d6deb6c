#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcns/random.hpp"
#include "mcns/theory.hpp"

using namespace mcns;

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Minimizer of -(a log s(t) + b log s(-t)) by bisection on its derivative
// a (s(t) - 1) + b s(t), which is increasing in t.
double bisect_logit(double a, double b) {
  double lo = -60, hi = 60;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double d = a * (sig(mid) - 1) + b * sig(mid);
    (d > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

CategoricalPair random_pair(Rng& rng, std::size_t n) {
  CategoricalPair p;
  std::vector<double> a(n), b(n);
  for (auto& x : a) x = uniform_real(rng, 0.05, 1.0);
  for (auto& x : b) x = uniform_real(rng, 0.05, 1.0);
  p.p_d = normalize(a);
  p.p_n = normalize(b);
  p.k = 1 + uniform_index(rng, 5);
  return p;
}

CategoricalPair uniform_pair(std::size_t n, std::size_t k) {
  return {std::vector<double>(n, 1.0 / n), std::vector<double>(n, 1.0 / n), k};
}

}  // namespace

TEST(OptimalLogits, EqualDistributions) {
  auto th = optimal_logits(uniform_pair(4, 1));
  for (double t : th) EXPECT_NEAR(t, 0.0, 1e-15);
}

TEST(OptimalLogits, HandExampleAgainstBisection) {
  CategoricalPair p{{0.2, 0.8}, {0.1, 0.9}, 5};
  auto th = optimal_logits(p);
  EXPECT_NEAR(th[0], -std::log(2.5), 1e-12);
  EXPECT_NEAR(th[0], -0.916291, 1e-6);
  EXPECT_NEAR(th[0], bisect_logit(0.2, 5 * 0.1), 1e-9);
  EXPECT_NEAR(th[1], bisect_logit(0.8, 5 * 0.9), 1e-9);
}

TEST(OptimalLogits, SigmoidIdentity) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    auto p = random_pair(rng, 1 + uniform_index(rng, 20));
    auto th = optimal_logits(p);
    for (std::size_t u = 0; u < p.size(); ++u) {
      EXPECT_NEAR(sig(th[u]) * (p.p_d[u] + p.k * p.p_n[u]), p.p_d[u], 1e-12);
    }
  }
}

TEST(OptimalLogits, SupportEdgeCases) {
  CategoricalPair missing_pos{{0.0, 1.0}, {0.5, 0.5}, 1};
  auto th = optimal_logits(missing_pos);
  EXPECT_EQ(th[0], -std::numeric_limits<double>::infinity());
  CategoricalPair missing_neg{{0.5, 0.5}, {0.0, 1.0}, 1};
  EXPECT_THROW(optimal_logits(missing_neg), DomainError);
}

TEST(OptimalLogits, InvalidPair) {
  CategoricalPair bad{{0.5, 0.6}, {0.5, 0.5}, 1};
  EXPECT_THROW(bad.validate(), ArgumentError);
  CategoricalPair zero_k{{0.5, 0.5}, {0.5, 0.5}, 0};
  EXPECT_THROW(zero_k.validate(), ArgumentError);
  CategoricalPair ragged{{1.0}, {0.5, 0.5}, 1};
  EXPECT_THROW(ragged.validate(), ArgumentError);
}

TEST(PopulationMinimizer, MatchesClosedFormOn100Pairs) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    auto p = random_pair(rng, 2 + uniform_index(rng, 19));
    auto fit = minimize_population_objective(p);
    auto th = optimal_logits(p);
    EXPECT_TRUE(fit.converged);
    for (std::size_t u = 0; u < p.size(); ++u) {
      EXPECT_NEAR(fit.logits[u], th[u], 1e-4);
      EXPECT_NEAR(fit.logits[u], bisect_logit(p.p_d[u], p.k * p.p_n[u]), 1e-4);
    }
  }
}

TEST(RiskPrediction, UniformExample) {
  auto r = risk_prediction(uniform_pair(10, 1), 100);
  for (double x : r) EXPECT_NEAR(x, 0.18, 1e-12);
}

TEST(RiskPrediction, ScalesWithT) {
  Rng rng(3);
  auto p = random_pair(rng, 6);
  auto a = risk_prediction(p, 50);
  auto b = risk_prediction(p, 100);
  for (std::size_t u = 0; u < a.size(); ++u) EXPECT_NEAR(b[u], a[u] / 2, 1e-15);
}

TEST(RiskPrediction, MatchesRiskModel) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto p = random_pair(rng, 8);
    auto model = risk_model(p, 300);
    auto direct = risk_prediction(p, 300);
    auto via = risk_from_model(model, p.k);
    for (std::size_t u = 0; u < 8; ++u) {
      const double m = p.k * p.p_d[u] * p.p_n[u] / (p.p_d[u] + p.k * p.p_n[u]);
      EXPECT_NEAR(model.m[u], m, 1e-15);
      EXPECT_NEAR(via[u], direct[u], 1e-12);
      EXPECT_NEAR(direct[u], (1.0 / m - (1.0 + 1.0 / p.k)) / 300, 1e-12);
    }
  }
}

TEST(RiskPrediction, ZeroProbability) {
  CategoricalPair p{{0.0, 1.0}, {0.5, 0.5}, 1};
  EXPECT_THROW(risk_prediction(p, 10), DomainError);
}

TEST(FitSingleNode, LargeTConsistency) {
  CategoricalPair p{{0.4, 0.3, 0.2, 0.1}, {0.1, 0.2, 0.3, 0.4}, 2};
  auto fit = fit_single_node(p, 1000000, 5);
  auto th = optimal_logits(p);
  for (std::size_t u = 0; u < 4; ++u) {
    ASSERT_TRUE(fit.drawn[u]);
    EXPECT_NEAR(fit.logits[u], th[u], 0.01);
  }
}

TEST(FitSingleNode, EmpiricalLogOdds) {
  // The empirical minimizer is log(a_u / b_u) on drawn outcomes.
  CategoricalPair p{{0.5, 0.3, 0.2}, {0.2, 0.3, 0.5}, 3};
  auto fit = fit_single_node(p, 200, 9);
  for (std::size_t u = 0; u < 3; ++u) {
    if (!fit.drawn[u]) continue;
    EXPECT_NEAR(fit.logits[u], std::log(fit.pos_weight[u] / fit.neg_weight[u]), 1e-6);
  }
  EXPECT_NEAR(std::accumulate(fit.pos_weight.begin(), fit.pos_weight.end(), 0.0), 200.0, 1e-9);
  EXPECT_NEAR(std::accumulate(fit.neg_weight.begin(), fit.neg_weight.end(), 0.0), 600.0, 1e-9);
}

TEST(FitSingleNode, TinySampleStaysFinite) {
  CategoricalPair p{{0.5, 0.5}, {0.5, 0.5}, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto fit = fit_single_node(p, 1, seed);
    for (std::size_t u = 0; u < 2; ++u) {
      const double a = fit.pos_weight[u], b = fit.neg_weight[u];
      if (a > 0 && b > 0) EXPECT_TRUE(std::isfinite(fit.logits[u]));
      if (a > 0 && b == 0) EXPECT_EQ(fit.logits[u], std::numeric_limits<double>::infinity());
      if (a == 0 && b > 0) EXPECT_EQ(fit.logits[u], -std::numeric_limits<double>::infinity());
    }
  }
}

TEST(FitSingleNode, Deterministic) {
  CategoricalPair p{{0.6, 0.4}, {0.3, 0.7}, 2};
  EXPECT_EQ(fit_single_node(p, 500, 3).logits, fit_single_node(p, 500, 3).logits);
}

TEST(EmpiricalRisk, UniformWithinFifteenPercent) {
  auto p = uniform_pair(10, 1);
  auto est = empirical_risk(p, 1000, 500, 7);
  for (std::size_t u = 0; u < 10; ++u) {
    EXPECT_EQ(est.drawn_trials[u], 500u);
    EXPECT_NEAR(est.mse[u] / 0.018, 1.0, 0.15) << "outcome " << u;
  }
}

TEST(EmpiricalRisk, DecreasesWithT) {
  CategoricalPair p{{0.4, 0.3, 0.2, 0.1}, {0.25, 0.25, 0.25, 0.25}, 1};
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t T : {100u, 1000u, 10000u}) {
    auto est = empirical_risk(p, T, 200, 11);
    const double mean = std::accumulate(est.mse.begin(), est.mse.end(), 0.0) / 4;
    EXPECT_LT(mean, prev);
    prev = mean;
  }
}

TEST(EmpiricalRisk, DominatedBySmallestProbability) {
  CategoricalPair p{{0.5, 0.3, 0.15, 0.05}, {0.25, 0.25, 0.25, 0.25}, 1};
  auto est = empirical_risk(p, 1000, 300, 13);
  auto pred = risk_prediction(p, 1000);
  const auto worst = std::max_element(est.mse.begin(), est.mse.end()) - est.mse.begin();
  EXPECT_EQ(worst, 3);
  EXPECT_EQ(std::max_element(pred.begin(), pred.end()) - pred.begin(), 3);
}

TEST(Sublinear, DecreasingExample) {
  auto r = sublinear_check({0.5, 0.3, 0.2}, 0.5, 1);
  EXPECT_TRUE(r.ordering_ok);
  EXPECT_TRUE(r.risk_inverse_ok);
  EXPECT_GT(r.theta[0], r.theta[1]);
  EXPECT_GT(r.theta[1], r.theta[2]);
}

TEST(Sublinear, SlopeIsOneMinusAlpha) {
  std::vector<double> pd = normalize({5, 1, 3, 8, 2, 0.5});
  for (double alpha : {0.25, 0.5, 0.75}) {
    auto r = sublinear_check(pd, alpha, 3);
    EXPECT_NEAR(r.slope, 1 - alpha, 1e-10);
    EXPECT_LT(r.max_residual, 1e-10);
    // Independent check: p_n built here from the stated law.
    std::vector<double> w(pd.size());
    for (std::size_t i = 0; i < pd.size(); ++i) w[i] = std::pow(pd[i], alpha);
    auto pn = normalize(w);
    for (std::size_t i = 0; i < pd.size(); ++i) EXPECT_NEAR(r.p_n[i], pn[i], 1e-15);
  }
}

TEST(Sublinear, UniformNoiseIsLinear) {
  std::vector<double> pd = normalize({5, 1, 3, 8});
  auto r = sublinear_check_with(pd, std::vector<double>(4, 0.25), 1);
  EXPECT_TRUE(r.ordering_ok);
  EXPECT_NEAR(r.slope, 1.0, 1e-10);
}

TEST(Sublinear, RandomDistributionsKeepOrder) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w(2 + uniform_index(rng, 30));
    for (auto& x : w) x = uniform_real(rng, 1e-3, 1);
    const double alpha = uniform_real(rng, 0.01, 0.99);
    auto r = sublinear_check(normalize(w), alpha, 1 + uniform_index(rng, 10));
    EXPECT_TRUE(r.ordering_ok);
    EXPECT_TRUE(r.risk_inverse_ok);
  }
}

TEST(Sublinear, TiesReported) {
  auto r = sublinear_check({0.4, 0.2, 0.2, 0.2}, 0.5, 1);
  EXPECT_TRUE(r.ordering_ok);
  EXPECT_EQ(r.tie_groups, 1u);
  EXPECT_THROW(sublinear_check({0.5, 0.5}, 1.0, 1), ArgumentError);
  EXPECT_THROW(sublinear_check({0.5, 0.5}, 0.0, 1), ArgumentError);
}

TEST(VerifyTheory, DefaultSuitePasses) {
  auto report = verify_theory(TheoryOptions{});
  EXPECT_TRUE(report.all_pass());
  EXPECT_GE(report.checks.size(), 5u);
  for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}
