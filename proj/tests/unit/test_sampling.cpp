#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "mcns/sampling.hpp"

using namespace mcns;

namespace {

// Upper 1% point of chi-square with df degrees of freedom (Wilson-Hilferty).
double chi2_critical_99(double df) {
  const double z = 2.326347874;
  const double a = 2.0 / (9.0 * df);
  return df * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

// Encoder whose central row of node 0 is [1] and whose context scores are given.
LookupEncoder score_encoder(const std::vector<double>& context_scores) {
  const std::size_t n = context_scores.size();
  Matrix central(n, 1, 0.0), context(n, 1, 0.0);
  central(0, 0) = 1.0;
  for (std::size_t i = 0; i < n; ++i) context(i, 0) = context_scores[i];
  return LookupEncoder(central, context);
}

LookupEncoder random_encoder(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, dim), b(n, dim);
  for (double& x : a.data()) x = uniform_real(rng, -1, 1);
  for (double& x : b.data()) x = uniform_real(rng, -1, 1);
  return LookupEncoder(a, b);
}

// Oracle stationary law w(u) / sum w over admitted candidates.
std::vector<double> target_law(const Encoder& enc, const CandidatePool& pool, const McnsParams& p, NodeId v,
                               std::size_t n) {
  std::vector<double> pi(n, 0.0);
  for (NodeId u : pool.nodes()) {
    if (!pool.admits(v, u)) continue;
    pi[u] = std::pow(std::max(enc.score(v, u), p.epsilon), p.alpha);
  }
  const double z = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& x : pi) x /= z;
  return pi;
}

// Oracle MH kernel K(x, y) built from the proposal probabilities.
std::vector<std::vector<double>> mh_kernel(const std::vector<double>& pi, const ProposalDistribution& q,
                                           std::span<const NodeId> nodes, std::size_t n) {
  std::vector<std::vector<double>> k(n, std::vector<double>(n, 0.0));
  for (NodeId x : nodes) {
    if (pi[x] == 0.0) continue;
    double off = 0.0;
    for (NodeId y : nodes) {
      if (y == x) continue;
      const double qxy = q.prob(x, y);
      const double a = pi[y] == 0.0 ? 0.0 : std::min(1.0, pi[y] * q.prob(y, x) / (pi[x] * qxy));
      k[x][y] = qxy * a;
      off += k[x][y];
    }
    k[x][x] = 1.0 - off;
  }
  return k;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace

TEST(CandidatePoolTest, Admission) {
  Graph g = fx::path_graph(4);
  CandidatePool plain(g);
  EXPECT_EQ(plain.size(), 4u);
  EXPECT_FALSE(plain.admits(1, 1));
  EXPECT_TRUE(plain.admits(1, 2));
  CandidatePool strict(g, true);
  EXPECT_FALSE(strict.admits(1, 2));
  EXPECT_TRUE(strict.admits(1, 3));
}

TEST(CandidatePoolTest, BipartiteUsesItemSide) {
  Graph g = fx::bipartite_graph(5, 7, 0.3, 1);
  CandidatePool pool(g);
  EXPECT_EQ(pool.size(), 7u);
  for (NodeId u : pool.nodes()) EXPECT_EQ(g.side(u), Side::I);
  EXPECT_EQ(central_nodes(g), g.nodes_on(Side::U));
}

TEST(PositiveSamplerTest, DirectEdgeSingleEdge) {
  Graph g = fx::path_graph(2);
  PositiveSampler ps(g, PositiveKind::direct_edge);
  Rng rng(1);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (int i = 0; i < 200; ++i) seen.insert(ps.sample_pair(rng));
  EXPECT_EQ(seen, (std::set<std::pair<NodeId, NodeId>>{{0, 1}, {1, 0}}));
}

TEST(PositiveSamplerTest, WindowOneIsAdjacent) {
  Graph g = fx::path_graph(6);
  PositiveSampler ps(g, PositiveKind::walk_window, 1, 10);
  Rng rng(2);
  for (int i = 0; i < 5000; ++i) {
    auto [v, u] = ps.sample_pair(rng);
    EXPECT_TRUE(g.has_edge(v, u));
    auto c = ps.sample_context(v, rng);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(g.has_edge(v, *c));
  }
}

TEST(PositiveSamplerTest, WindowPairsWithinWindowSteps) {
  Graph g = fx::path_graph(30);
  PositiveSampler ps(g, PositiveKind::walk_window, 3, 20);
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    auto [v, u] = ps.sample_pair(rng);
    const int d = std::abs(static_cast<int>(v) - static_cast<int>(u));
    EXPECT_LE(d, 3);
  }
}

TEST(PositiveSamplerTest, DirectEdgeUniformOverThreeEdges) {
  Graph g = fx::path_graph(4);
  PositiveSampler ps(g, PositiveKind::direct_edge);
  Rng rng(4);
  std::map<Edge, std::size_t> count;
  const std::size_t draws = 100000;
  for (std::size_t i = 0; i < draws; ++i) {
    auto [v, u] = ps.sample_pair(rng);
    ++count[std::minmax(v, u)];
  }
  ASSERT_EQ(count.size(), 3u);
  for (auto& [e, c] : count) EXPECT_NEAR(static_cast<double>(c) / draws, 1.0 / 3, 0.02);
}

TEST(PositiveSamplerTest, BipartiteEmitsUserItem) {
  Graph g = fx::bipartite_graph(8, 12, 0.3, 5);
  for (auto kind : {PositiveKind::direct_edge, PositiveKind::walk_window}) {
    PositiveSampler ps(g, kind, 5, 20);
    Rng rng(6);
    for (int i = 0; i < 3000; ++i) {
      auto [v, u] = ps.sample_pair(rng);
      EXPECT_EQ(g.side(v), Side::U);
      EXPECT_EQ(g.side(u), Side::I);
      auto c = ps.sample_context(v, rng);
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(g.side(*c), Side::I);
    }
  }
}

TEST(PositiveSamplerTest, EmptyGraph) {
  Graph g = fx::graph_of(3, {});
  EXPECT_ANY_THROW(PositiveSampler(g, PositiveKind::direct_edge));
}

TEST(DegreeDistTest, LinearWeights) {
  Graph g = fx::path_graph(3);
  std::vector<NodeId> all{0, 1, 2};
  DegreeDist d(g, all, 1.0);
  EXPECT_NEAR(d.probability_at(0), 0.25, 1e-12);
  EXPECT_NEAR(d.probability_at(1), 0.5, 1e-12);
  EXPECT_NEAR(d.probability_at(2), 0.25, 1e-12);
}

TEST(DegreeDistTest, ThreeQuarterPower) {
  // Node 0 has degree 16, each leaf degree 1; pick one leaf and the hub.
  Graph g = fx::star_graph(17);
  std::vector<NodeId> pick{1, 0};
  DegreeDist d(g, pick, 0.75);
  EXPECT_NEAR(d.probability_at(0), 1.0 / 9, 1e-12);
  EXPECT_NEAR(d.probability_at(1), 8.0 / 9, 1e-12);
}

TEST(DegreeDistTest, BetaZeroIsUniform) {
  Graph g = fx::ba_graph(40, 2, 3);
  CandidatePool pool(g);
  DegreeDist d(g, pool.nodes(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i) EXPECT_NEAR(d.probability_at(i), 1.0 / 40, 1e-12);
}

TEST(DegreeDistTest, BetaZeroMatchesUniformDraws) {
  Graph g = fx::ba_graph(30, 2, 3);
  CandidatePool pool(g);
  DegreeDist d(g, pool.nodes(), 0.0);
  Rng r1(11), r2(12);
  const std::size_t draws = 100000;
  std::vector<double> a(30, 0.0), b(30, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    a[sample_degree_power(d, r1)] += 1;
    b[pool.uniform(r2)] += 1;
  }
  // Two-sample chi-square homogeneity test.
  double stat = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    const double e = (a[i] + b[i]) / 2;
    stat += (a[i] - e) * (a[i] - e) / e + (b[i] - e) * (b[i] - e) / e;
  }
  EXPECT_LT(stat, chi2_critical_99(29));
}

TEST(DegreeDistTest, EmpiricalLaw) {
  Graph g = fx::star_graph(5);
  CandidatePool pool(g);
  DegreeDist d(g, pool.nodes(), 1.0);
  Rng rng(5);
  std::vector<double> c(5, 0.0);
  const std::size_t draws = 100000;
  for (std::size_t i = 0; i < draws; ++i) c[d.sample(rng)] += 1;
  EXPECT_NEAR(c[0] / draws, 0.5, 0.01);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(c[i] / draws, 0.125, 0.01);
}

TEST(DegreeDistTest, NegativeBetaWithIsolatedNode) {
  Graph g = fx::graph_of(3, {{0, 1}});
  std::vector<NodeId> all{0, 1, 2};
  EXPECT_THROW(DegreeDist(g, all, -1.0), DomainError);
  EXPECT_THROW(DegreeDist(g, std::vector<NodeId>{2}, 1.0), DomainError);
}

TEST(Dns, PicksHighestScore) {
  Graph g = fx::star_graph(4);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.1, 0.9, 0.3});
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(dns_sample(e, 0, 200, pool, rng), NodeId{2});
  for (int i = 0; i < 20; ++i) EXPECT_EQ(inverse_dns_sample(e, 0, 200, pool, rng), NodeId{1});
}

TEST(Dns, TiesGoToLowestId) {
  Graph g = fx::star_graph(5);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.5, 0.5, 0.5, 0.5});
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(dns_sample(e, 0, 200, pool, rng), NodeId{1});
    EXPECT_EQ(inverse_dns_sample(e, 0, 200, pool, rng), NodeId{1});
  }
}

TEST(Dns, SingleCandidateIsUniform) {
  Graph g = fx::star_graph(5);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.1, 0.9, 0.3, 0.2});
  Rng rng(3);
  std::vector<double> c(5, 0.0), ci(5, 0.0);
  const std::size_t draws = 40000;
  for (std::size_t i = 0; i < draws; ++i) {
    c[*dns_sample(e, 0, 1, pool, rng)] += 1;
    ci[*inverse_dns_sample(e, 0, 1, pool, rng)] += 1;
  }
  EXPECT_EQ(c[0], 0.0);
  double stat = 0.0, stat_i = 0.0;
  for (int i = 1; i < 5; ++i) {
    const double e_count = draws / 4.0;
    stat += (c[i] - e_count) * (c[i] - e_count) / e_count;
    stat_i += (ci[i] - e_count) * (ci[i] - e_count) / e_count;
  }
  EXPECT_LT(stat, chi2_critical_99(3));
  EXPECT_LT(stat_i, chi2_critical_99(3));
}

TEST(Dns, ZeroCandidates) {
  Graph g = fx::star_graph(3);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0, 0, 0});
  Rng rng(1);
  EXPECT_THROW(dns_sample(e, 0, 0, pool, rng), ArgumentError);
}

TEST(Warp, FirstViolatorReturned) {
  Graph g = fx::star_graph(4);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 1.0, 1.0, 1.0});
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    auto d = warp_sample(e, 0, 1, 0.1, 10, pool, rng);
    EXPECT_TRUE(d.node.has_value());
    EXPECT_EQ(d.tries, 1u);
  }
}

TEST(Warp, NoViolatorGivesNone) {
  Graph g = fx::star_graph(4);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.4, 0.4, 0.4});
  Rng rng(2);
  auto d = warp_sample(e, 0, 1, 0.0, 25, pool, rng);
  EXPECT_FALSE(d.node.has_value());
  EXPECT_EQ(d.tries, 25u);
}

TEST(Warp, TriesFollowGeometricLaw) {
  // Candidates 1..4, only node 2 beats the positive (node 1): success rate 1/4.
  Graph g = fx::star_graph(5);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.5, 1.0, 0.0, 0.0});
  Rng rng(3);
  const std::size_t calls = 20000;
  double total = 0.0, ones = 0.0;
  for (std::size_t i = 0; i < calls; ++i) {
    auto d = warp_sample(e, 0, 1, 0.0, 1000, pool, rng);
    ASSERT_EQ(d.node, NodeId{2});
    total += static_cast<double>(d.tries);
    if (d.tries == 1) ones += 1;
  }
  EXPECT_NEAR(total / calls, 4.0, 0.1);
  EXPECT_NEAR(ones / calls, 0.25, 0.01);
}

TEST(Proposal, HandExample) {
  ProposalDistribution q(4, {{1}, {}, {}, {}});
  EXPECT_DOUBLE_EQ(proposal_prob(q, 0, 1), 0.625);
  EXPECT_DOUBLE_EQ(proposal_prob(q, 0, 2), 0.125);
  EXPECT_DOUBLE_EQ(proposal_prob(q, 1, 2), 0.25);
}

TEST(Proposal, NormalizedOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (bool bip : {false, true}) {
      Graph g = bip ? fx::bipartite_graph(15, 25, 0.2, seed) : fx::ba_graph(40, 3, seed);
      CandidatePool pool(g);
      ProposalDistribution q(g, pool, 4, seed);
      for (NodeId x : pool.nodes()) {
        double s = 0.0;
        for (NodeId y : pool.nodes()) {
          const double p = q.prob(x, y);
          EXPECT_GT(p, 0.0);
          s += p;
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
        EXPECT_LE(q.local(x).size(), 4u);
        for (NodeId y : q.local(x)) EXPECT_TRUE(pool.contains(y));
      }
    }
  }
}

TEST(Proposal, EmpiricalMatchesProb) {
  Graph g = fx::ba_graph(12, 2, 4);
  CandidatePool pool(g);
  ProposalDistribution q(g, pool, 10, 1);
  Rng rng(8);
  const std::size_t draws = 100000;
  std::vector<double> c(12, 0.0);
  for (std::size_t i = 0; i < draws; ++i) c[q.sample(3, rng)] += 1;
  for (NodeId y = 0; y < 12; ++y) EXPECT_NEAR(c[y] / draws, q.prob(3, y), 0.01);
}

TEST(McnsTarget, ClampAndMonotone) {
  Graph g = fx::star_graph(5);
  CandidatePool pool(g);
  McnsParams p;
  LookupEncoder e = score_encoder({0.0, -3.0, 0.5, 2.0, 1e-6});
  EXPECT_EQ(mcns_target_weight(e, pool, p, 0, 0), 0.0);
  EXPECT_NEAR(mcns_target_weight(e, pool, p, 0, 1), std::pow(1e-4, 0.75), 1e-15);
  EXPECT_NEAR(mcns_target_weight(e, pool, p, 0, 4), std::pow(1e-4, 0.75), 1e-15);
  EXPECT_NEAR(mcns_target_weight(e, pool, p, 0, 3), std::pow(2.0, 0.75), 1e-12);
  EXPECT_GT(mcns_target_weight(e, pool, p, 0, 3), mcns_target_weight(e, pool, p, 0, 2));
  // Sub-linear: doubling the score less than doubles the weight.
  EXPECT_LT(mcns_target_weight(e, pool, p, 0, 3) / mcns_target_weight(e, pool, p, 0, 2), 4.0);
}

TEST(McnsChainTest, ParameterChecks) {
  Graph g = fx::path_graph(3);
  CandidatePool pool(g);
  EXPECT_THROW(McnsChain(pool, McnsParams{1.0, 1e-4, 10, 20}, 0), ArgumentError);
  EXPECT_THROW(McnsChain(pool, McnsParams{0.5, 0.0, 10, 20}, 0), ArgumentError);
  EXPECT_THROW(McnsChain(pool, McnsParams{}, 9), ArgumentError);
}

TEST(McnsChainTest, EqualWeightsAlwaysMove) {
  // Candidates 1..3 share one score; every admitted proposal is accepted.
  Graph g = fx::star_graph(4);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.7, 0.7, 0.7});
  ProposalDistribution q(4, {});
  McnsChain chain(pool, McnsParams{}, 1);
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const NodeId x = chain.current();
    const std::size_t acc = chain.accepts();
    chain.step(e, 0, q, rng);
    // A rejection can only follow a proposal of the inadmissible node 0.
    if (chain.accepts() == acc) EXPECT_EQ(chain.current(), x);
    EXPECT_NE(chain.current(), NodeId{0});
  }
  EXPECT_NEAR(chain.acceptance_rate(), 0.75, 0.03);
}

TEST(McnsChainTest, HalfWeightAcceptance) {
  // From x with w = 1, every other admitted node has w = 0.5 under a symmetric proposal.
  const std::size_t n = 50;
  std::vector<double> scores(n, std::pow(0.5, 1.0 / 0.75));
  scores[0] = 0.0;
  scores[1] = 1.0;
  Graph g = fx::star_graph(n);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder(scores);
  ProposalDistribution q(n, {});
  McnsChain chain(pool, McnsParams{}, 1);
  Rng rng(2);
  const std::size_t trials = 100000;
  std::size_t moves = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    chain.reset(1);
    if (chain.step(e, 0, q, rng) != 1) ++moves;
  }
  // Proposals land on one of the n - 2 half-weight nodes with probability (n-2)/n.
  const double rate = static_cast<double>(moves) / (trials * (n - 2.0) / n);
  EXPECT_NEAR(rate, 0.5, 0.01);
}

TEST(McnsChainTest, DetailedBalanceByEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 8;
    Graph g = fx::ba_graph(n, 2, seed);
    CandidatePool pool(g, seed % 2 == 1);
    LookupEncoder e = random_encoder(n, 3, seed);
    McnsParams p;
    ProposalDistribution q(g, pool, 2, seed);
    const NodeId v = static_cast<NodeId>(seed % n);
    auto pi = target_law(e, pool, p, v, n);
    auto k = mh_kernel(pi, q, pool.nodes(), n);
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = 0; y < n; ++y) EXPECT_NEAR(pi[x] * k[x][y], pi[y] * k[y][x], 1e-14);
    }
    // pi is stationary for K.
    for (NodeId y = 0; y < n; ++y) {
      double flow = 0.0;
      for (NodeId x = 0; x < n; ++x) flow += pi[x] * k[x][y];
      EXPECT_NEAR(flow, pi[y], 1e-12);
    }
  }
}

TEST(McnsChainTest, SingleStepMatchesKernel) {
  const std::size_t n = 7;
  Graph g = fx::ba_graph(n, 2, 5);
  CandidatePool pool(g);
  LookupEncoder e = random_encoder(n, 3, 5);
  McnsParams p;
  ProposalDistribution q(g, pool, 2, 5);
  const NodeId v = 0;
  auto pi = target_law(e, pool, p, v, n);
  auto k = mh_kernel(pi, q, pool.nodes(), n);
  McnsChain chain(pool, p, 1);
  Rng rng(6);
  const std::size_t trials = 40000;
  for (NodeId x = 1; x < n; ++x) {
    std::vector<double> c(n, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
      chain.reset(x);
      c[chain.step(e, v, q, rng)] += 1;
    }
    for (NodeId y = 0; y < n; ++y) EXPECT_NEAR(c[y] / trials, k[x][y], 0.01) << x << "->" << y;
  }
}

TEST(McnsChainTest, StationaryTotalVariation) {
  const std::size_t n = 20;
  Graph g = fx::ba_graph(n, 2, 7);
  CandidatePool pool(g);
  LookupEncoder e = random_encoder(n, 4, 7);
  McnsParams p;
  ProposalDistribution q(g, pool, 10, 7);
  const NodeId v = 3;
  auto pi = target_law(e, pool, p, v, n);
  McnsChain chain(pool, p, 5);
  Rng rng(9);
  std::vector<double> visits(n, 0.0);
  std::vector<double> tv;
  std::size_t steps = 0;
  for (std::size_t checkpoint : {1000u, 10000u, 100000u, 1000000u}) {
    for (; steps < checkpoint; ++steps) visits[chain.step(e, v, q, rng)] += 1;
    std::vector<double> freq(n);
    for (std::size_t i = 0; i < n; ++i) freq[i] = visits[i] / static_cast<double>(steps);
    tv.push_back(total_variation(freq, pi));
  }
  EXPECT_LT(tv.back(), 0.02);
  for (std::size_t i = 1; i < tv.size(); ++i) EXPECT_LE(tv[i], tv[i - 1] + 0.02);
  EXPECT_EQ(visits[v], 0.0);
}

TEST(McnsChainTest, MonotoneStationaryOrder) {
  const std::size_t n = 6;
  Graph g = fx::star_graph(n);
  CandidatePool pool(g);
  LookupEncoder e = score_encoder({0.0, 0.2, 0.4, 0.8, 1.6, 3.2});
  ProposalDistribution q(g, pool, 10, 1);
  McnsChain chain(pool, McnsParams{}, 1);
  Rng rng(3);
  std::vector<double> visits(n, 0.0);
  for (int i = 0; i < 200000; ++i) visits[chain.step(e, 0, q, rng)] += 1;
  for (NodeId u = 1; u + 1 < n; ++u) EXPECT_LT(visits[u], visits[u + 1]);
}

TEST(ChainScheduleTest, TreePassIsDfs) {
  Graph g = fx::path_graph(3);
  ChainSchedule s(g, 4);
  auto p = s.pass(0);
  ASSERT_EQ(p.size(), 5u);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.has_edge(p[i], p[i + 1]));
  EXPECT_EQ(p.front(), p.back());
  EXPECT_EQ(s.pass(0), ChainSchedule(g, 4).pass(0));
}

TEST(ChainScheduleTest, BipartiteEmitsUsersOnly) {
  Graph g = fx::bipartite_graph(10, 14, 0.25, 2);
  ChainSchedule s(g, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    auto p = s.pass(i);
    std::set<NodeId> users(p.begin(), p.end());
    EXPECT_EQ(users.size(), 10u);
    for (NodeId v : p) EXPECT_EQ(g.side(v), Side::U);
  }
}

TEST(ChainScheduleTest, WarmupRunsAgainstFirstCentral) {
  Graph g = fx::ba_graph(30, 2, 3);
  CandidatePool pool(g);
  LookupEncoder e = random_encoder(30, 3, 1);
  ProposalDistribution q(g, pool, 10, 1);
  McnsChain chain(pool, McnsParams{}, 0);
  ChainSchedule s(g, 2);
  Rng rng(1);
  s.begin_pass(chain, e, 4, q, rng);
  EXPECT_EQ(chain.steps(), 20u);
  EXPECT_TRUE(pool.contains(chain.current()));
}

TEST(NegativeSamplers, BipartiteConfinement) {
  Graph g = fx::bipartite_graph(12, 18, 0.2, 3);
  LookupEncoder e = random_encoder(30, 4, 3);
  PositiveSampler ps(g, PositiveKind::direct_edge);
  for (const auto& name : sampler_names()) {
    SamplerParams sp;
    sp.kind = *parse_sampler_kind(name);
    auto sampler = make_negative_sampler(g, sp, 5);
    Rng rng(5);
    sampler->begin_pass(e, 0, rng);
    for (int i = 0; i < 2000; ++i) {
      auto [v, u] = ps.sample_pair(rng);
      auto n = sampler->sample(e, v, u, rng);
      if (n) {
        EXPECT_EQ(g.side(*n), Side::I) << name;
        EXPECT_NE(*n, v);
      }
    }
    EXPECT_EQ(sampler->kind(), sp.kind);
  }
}

TEST(NegativeSamplers, ExcludeNeighborsRespected) {
  Graph g = fx::ba_graph(40, 2, 8);
  LookupEncoder e = random_encoder(40, 4, 8);
  for (const auto& name : sampler_names()) {
    SamplerParams sp;
    sp.kind = *parse_sampler_kind(name);
    sp.exclude_neighbors = true;
    auto sampler = make_negative_sampler(g, sp, 5);
    Rng rng(5);
    sampler->begin_pass(e, 0, rng);
    for (NodeId v = 0; v < 40; ++v) {
      for (int i = 0; i < 30; ++i) {
        auto n = sampler->sample(e, v, g.neighbors(v)[0], rng);
        if (n) {
          EXPECT_NE(*n, v) << name;
          EXPECT_FALSE(g.has_edge(v, *n)) << name;
        }
      }
    }
  }
}

TEST(NegativeSamplers, CloneIsIndependent) {
  Graph g = fx::ba_graph(30, 2, 1);
  LookupEncoder e = random_encoder(30, 4, 1);
  SamplerParams sp;
  auto a = make_negative_sampler(g, sp, 3);
  Rng r0(1);
  a->begin_pass(e, 0, r0);
  auto b = a->clone();
  Rng r1(2), r2(2);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a->sample(e, 1, 2, r1), b->sample(e, 1, 2, r2));
  EXPECT_EQ(a->stats().draws, b->stats().draws);
  EXPECT_EQ(a->stats().mh_steps, 100u);
}

TEST(NegativeSamplers, Names) {
  EXPECT_EQ(sampler_names().size(), 6u);
  for (const auto& n : sampler_names()) EXPECT_EQ(to_string(*parse_sampler_kind(n)), n);
  EXPECT_FALSE(parse_sampler_kind("gan").has_value());
}
