#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcns/random.hpp"
#include "mcns/theory.hpp"

namespace mcns {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<double> cumulative_of(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  std::partial_sum(p.begin(), p.end(), c.begin());
  return c;
}

}  // namespace

void CategoricalPair::validate() const {
  if (p_d.size() != p_n.size()) throw ArgumentError("p_d and p_n differ in length");
  if (p_d.empty()) throw ArgumentError("empty distribution");
  if (k == 0) throw ArgumentError("k must be at least 1");
  for (const auto* p : {&p_d, &p_n}) {
    double s = 0.0;
    for (double x : *p) {
      if (!(x >= 0.0)) throw ArgumentError("probabilities must be nonnegative");
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) throw ArgumentError("probabilities must sum to 1");
  }
}

std::vector<double> normalize(std::vector<double> weights) {
  double s = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ArgumentError("weights must be nonnegative");
    s += w;
  }
  if (s <= 0.0) throw DomainError("weights sum to zero");
  for (double& w : weights) w /= s;
  return weights;
}

std::vector<double> optimal_logits(const CategoricalPair& pair) {
  pair.validate();
  const double k = static_cast<double>(pair.k);
  std::vector<double> theta(pair.size());
  for (std::size_t u = 0; u < pair.size(); ++u) {
    const double pd = pair.p_d[u];
    const double pn = pair.p_n[u];
    if (pn == 0.0 && pd > 0.0) throw DomainError("p_n(u) = 0 where p_d(u) > 0 at outcome " + std::to_string(u));
    if (pd == 0.0) {
      theta[u] = -kInf;
      continue;
    }
    theta[u] = -std::log(k * pn / pd);
  }
  return theta;
}

std::vector<double> risk_prediction(const CategoricalPair& pair, std::size_t T) {
  pair.validate();
  if (T == 0) throw ArgumentError("T must be at least 1");
  const double k = static_cast<double>(pair.k);
  std::vector<double> out(pair.size());
  for (std::size_t u = 0; u < pair.size(); ++u) {
    const double pd = pair.p_d[u];
    const double pn = pair.p_n[u];
    if (pd == 0.0 || pn == 0.0) throw DomainError("risk undefined for zero-probability outcome " + std::to_string(u));
    out[u] = (1.0 / pd - 1.0 + 1.0 / (k * pn) - 1.0 / k) / static_cast<double>(T);
  }
  return out;
}

RiskModel risk_model(const CategoricalPair& pair, std::size_t T) {
  pair.validate();
  if (T == 0) throw ArgumentError("T must be at least 1");
  const double k = static_cast<double>(pair.k);
  RiskModel model;
  model.T = T;
  model.m.resize(pair.size());
  for (std::size_t u = 0; u < pair.size(); ++u) {
    const double pd = pair.p_d[u];
    const double pn = pair.p_n[u];
    const double denom = pd + k * pn;
    model.m[u] = denom > 0.0 ? k * pd * pn / denom : 0.0;
  }
  return model;
}

std::vector<double> risk_from_model(const RiskModel& model, std::size_t k) {
  const double kk = static_cast<double>(k);
  std::vector<double> out(model.m.size());
  for (std::size_t u = 0; u < out.size(); ++u) {
    if (model.m[u] <= 0.0) throw DomainError("risk undefined where m_u = 0");
    out[u] = (1.0 / model.m[u] - (1.0 + 1.0 / kk)) / static_cast<double>(model.T);
  }
  return out;
}

FitResult minimize_nce_objective(std::vector<double> pos_weight, std::vector<double> neg_weight, double scale,
                                 const FitOptions& options) {
  if (pos_weight.size() != neg_weight.size()) throw ArgumentError("weight vectors differ in length");
  if (!(scale > 0.0)) throw ArgumentError("scale must be positive");
  FitResult r;
  const std::size_t n = pos_weight.size();
  r.logits.assign(n, 0.0);
  r.drawn.assign(n, 0);
  std::vector<std::size_t> active;
  for (std::size_t u = 0; u < n; ++u) {
    const double a = pos_weight[u], b = neg_weight[u];
    if (a > 0.0 && b > 0.0) {
      r.drawn[u] = 1;
      active.push_back(u);
    } else if (a > 0.0) {
      r.logits[u] = kInf;
    } else if (b > 0.0) {
      r.logits[u] = -kInf;
    }
  }

  for (r.iterations = 0;; ++r.iterations) {
    double norm2 = 0.0;
    for (std::size_t u : active) {
      const double a = pos_weight[u], b = neg_weight[u];
      const double g = (-a + (a + b) * logistic(r.logits[u])) / scale;
      norm2 += g * g;
    }
    r.grad_norm = std::sqrt(norm2);
    if (r.grad_norm < options.tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= options.max_iterations) break;
    for (std::size_t u : active) {
      const double a = pos_weight[u], b = neg_weight[u];
      const double g = (-a + (a + b) * logistic(r.logits[u])) / scale;
      const double lipschitz = (a + b) / (4.0 * scale);
      r.logits[u] -= g / lipschitz;
    }
  }
  r.pos_weight = std::move(pos_weight);
  r.neg_weight = std::move(neg_weight);
  return r;
}

FitResult minimize_population_objective(const CategoricalPair& pair, const FitOptions& options) {
  pair.validate();
  std::vector<double> neg(pair.p_n);
  for (double& x : neg) x *= static_cast<double>(pair.k);
  return minimize_nce_objective(pair.p_d, std::move(neg), 1.0, options);
}

FitResult fit_single_node(const CategoricalPair& pair, std::size_t T, std::uint64_t seed, const FitOptions& options) {
  pair.validate();
  if (T == 0) throw ArgumentError("T must be at least 1");
  Rng rng(seed);
  const auto cd = cumulative_of(pair.p_d);
  const auto cn = cumulative_of(pair.p_n);
  std::vector<double> pos(pair.size(), 0.0), neg(pair.size(), 0.0);
  for (std::size_t i = 0; i < T; ++i) pos[sample_cumulative(cd, rng)] += 1.0;
  for (std::size_t i = 0; i < T * pair.k; ++i) neg[sample_cumulative(cn, rng)] += 1.0;
  return minimize_nce_objective(std::move(pos), std::move(neg), static_cast<double>(T), options);
}

RiskEstimate empirical_risk(const CategoricalPair& pair, std::size_t T, std::size_t trials, std::uint64_t seed,
                            const FitOptions& options) {
  const auto theta = optimal_logits(pair);
  RiskEstimate est;
  est.trials = trials;
  std::vector<double> sum(pair.size(), 0.0);
  est.drawn_trials.assign(pair.size(), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    FitResult fit = fit_single_node(pair, T, derive_seed(seed, t), options);
    for (std::size_t u = 0; u < pair.size(); ++u) {
      if (!fit.drawn[u] || !std::isfinite(theta[u])) continue;
      const double d = fit.logits[u] - theta[u];
      sum[u] += d * d;
      ++est.drawn_trials[u];
    }
  }
  est.mse.resize(pair.size());
  for (std::size_t u = 0; u < pair.size(); ++u) {
    est.mse[u] = est.drawn_trials[u] ? sum[u] / static_cast<double>(est.drawn_trials[u])
                                     : std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

SublinearReport sublinear_check(const std::vector<double>& p_d, double alpha, std::size_t k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  std::vector<double> w(p_d.size());
  for (std::size_t u = 0; u < p_d.size(); ++u) w[u] = std::pow(p_d[u], alpha);
  return sublinear_check_with(p_d, normalize(std::move(w)), k);
}

SublinearReport sublinear_check_with(const std::vector<double>& p_d, const std::vector<double>& p_n, std::size_t k) {
  CategoricalPair pair{p_d, p_n, k};
  pair.validate();
  for (double x : p_d) {
    if (x <= 0.0) throw DomainError("sublinear check needs p_d > 0 everywhere");
  }
  SublinearReport rep;
  rep.p_n = p_n;
  rep.theta = optimal_logits(pair);
  const auto risk = risk_prediction(pair, 1);
  const std::size_t n = p_d.size();

  rep.ordering_ok = true;
  rep.risk_inverse_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p_d[i] > p_d[j]) {
        rep.ordering_ok = rep.ordering_ok && rep.theta[i] > rep.theta[j];
        rep.risk_inverse_ok = rep.risk_inverse_ok && risk[i] < risk[j];
      } else if (p_d[i] == p_d[j]) {
        rep.ordering_ok = rep.ordering_ok && std::abs(rep.theta[i] - rep.theta[j]) <= 1e-12;
      }
    }
  }
  std::vector<double> sorted(p_d);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    if (j - i > 1) ++rep.tie_groups;
    i = j;
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    mx += std::log(p_d[u]);
    my += rep.theta[u];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const double dx = std::log(p_d[u]) - mx;
    sxx += dx * dx;
    sxy += dx * (rep.theta[u] - my);
  }
  rep.slope = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  const double slope = sxx > 0.0 ? rep.slope : 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const double fitted = my + slope * (std::log(p_d[u]) - mx);
    rep.max_residual = std::max(rep.max_residual, std::abs(rep.theta[u] - fitted));
  }
  return rep;
}

bool TheoryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const TheoryCheck& c) { return c.pass; });
}

namespace {

CategoricalPair random_pair(Rng& rng, std::size_t k) {
  const std::size_t n = 2 + uniform_index(rng, 19);
  std::vector<double> a(n), b(n);
  for (auto& x : a) x = 0.01 + uniform01(rng);
  for (auto& x : b) x = 0.01 + uniform01(rng);
  return {normalize(a), normalize(b), k};
}

TheoryCheck risk_check(const std::string& name, const CategoricalPair& pair, const TheoryOptions& o,
                       std::uint64_t salt) {
  const auto pred = risk_prediction(pair, o.T);
  const auto emp = empirical_risk(pair, o.T, o.trials, derive_seed(o.seed, salt));
  double worst = 0.0;
  for (std::size_t u = 0; u < pair.size(); ++u) {
    const double dev = std::isnan(emp.mse[u]) ? kInf : std::abs(emp.mse[u] / pred[u] - 1.0);
    worst = std::max(worst, dev);
  }
  return {name, worst <= 0.2, worst, 0.2, "max |empirical/predicted - 1| over outcomes"};
}

}  // namespace

TheoryReport verify_theory(const TheoryOptions& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (o.T == 0 || o.trials == 0) throw ArgumentError("T and trials must be at least 1");
  TheoryReport rep;
  rep.options = o;

  {
    Rng rng(derive_seed(o.seed, 0x71));
    double worst = 0.0, worst_identity = 0.0;
    for (std::size_t i = 0; i < o.random_pairs; ++i) {
      const auto pair = random_pair(rng, i % 2 == 0 ? 1 : 5);
      const auto closed = optimal_logits(pair);
      const auto fit = minimize_population_objective(pair);
      for (std::size_t u = 0; u < pair.size(); ++u) {
        worst = std::max(worst, std::abs(fit.logits[u] - closed[u]));
        const double k = static_cast<double>(pair.k);
        worst_identity =
            std::max(worst_identity, std::abs(logistic(closed[u]) * (pair.p_d[u] + k * pair.p_n[u]) - pair.p_d[u]));
      }
    }
    rep.checks.push_back({"optimal_logits_vs_minimizer", worst <= 1e-4, worst, 1e-4,
                          "max |argmin J - closed form| over random pairs"});
    rep.checks.push_back({"sigmoid_identity", worst_identity <= 1e-12, worst_identity, 1e-12,
                          "max |s(theta*)(p_d + k p_n) - p_d|"});
  }

  const std::vector<double> uniform(10, 0.1);
  rep.checks.push_back(risk_check("risk_uniform", {uniform, uniform, 1}, o, 0x72));

  {
    std::vector<double> zipf(10);
    for (std::size_t u = 0; u < zipf.size(); ++u) zipf[u] = 1.0 / static_cast<double>(u + 1);
    auto pd = normalize(zipf);
    std::vector<double> w(pd.size());
    for (std::size_t u = 0; u < w.size(); ++u) w[u] = std::pow(pd[u], o.alpha);
    rep.checks.push_back(risk_check("risk_power_law", {pd, normalize(w), 1}, o, 0x73));
  }

  {
    const CategoricalPair pair{uniform, uniform, 1};
    std::vector<double> means;
    for (std::size_t T : {std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
      const auto emp = empirical_risk(pair, T, std::min<std::size_t>(o.trials, 200), derive_seed(o.seed, 0x74, T));
      double s = 0.0;
      for (double x : emp.mse) s += x;
      means.push_back(s / static_cast<double>(emp.mse.size()));
    }
    const bool ok = means[0] > means[1] && means[1] > means[2];
    rep.checks.push_back({"risk_decreasing_in_T", ok, means[2] / means[0], 0.0,
                          "mean MSE at T = 100, 1000, 10000 strictly decreasing; measured = ratio last/first"});
  }

  {
    bool ok = true;
    double worst = 0.0;
    Rng rng(derive_seed(o.seed, 0x75));
    std::vector<std::vector<double>> cases{{0.5, 0.3, 0.2}};
    for (int i = 0; i < 20; ++i) cases.push_back(random_pair(rng, 1).p_d);
    for (const auto& pd : cases) {
      const auto r = sublinear_check(pd, o.alpha, 1);
      const double dev = std::max(std::abs(r.slope - (1.0 - o.alpha)), r.max_residual);
      worst = std::max(worst, dev);
      ok = ok && r.ordering_ok && r.risk_inverse_ok && dev < 1e-10;
    }
    rep.checks.push_back({"sublinear_structure", ok, worst, 1e-10,
                          "theta* monotone in p_d, slope 1-alpha against log p_d, risk inversely ordered"});
  }
  return rep;
}

}  // namespace mcns
