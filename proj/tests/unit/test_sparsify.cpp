#include <gtest/gtest.h>

#include <cmath>

#include "robustis/sparsify.hpp"
#include "robustis/strength.hpp"

using namespace robustis;

namespace {

std::vector<std::vector<Vertex>> random_stream(std::uint64_t seed, std::size_t n, std::size_t m) {
  auto adv = random_edge_adversary(n, 2, 4, seed);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(adv->next_edge(out, {}));
  return out;
}

}  // namespace

TEST(Sparsify, RhoFormula) {
  EXPECT_NEAR(sparsifier_rho(8.0, 0.25, 8), 8.0 * 16.0 * 8.0 * std::log(8.0), 1e-9);
  EXPECT_THROW(sparsifier_rho(0.0, 0.25, 8), std::invalid_argument);
  EXPECT_THROW(sparsifier_rho(8.0, 0.25, 1), std::invalid_argument);
}

TEST(Sparsify, ProbabilityIsRhoOverStrength) {
  const auto stream = random_stream(1, 7, 60);
  const auto res = stream_sparsify(stream, 7, 0.5, 0.05, Rng(3));
  Hypergraph current(7);
  ExactStrengthOracle oracle;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto& d = res.decisions[i];
    const auto e = make_edge(stream[i], 7);
    EXPECT_EQ(d.strength, oracle.strength_with_edge(current, e));
    EXPECT_DOUBLE_EQ(d.p, std::min(1.0, res.sparsifier.rho / d.strength));
    if (d.coin) current.add_edge(e.vertices, 1.0 / d.p);
  }
  EXPECT_EQ(current.num_edges(), res.sparsifier.kept.size());
}

TEST(Sparsify, KeptWeightsAreInverseProbabilities) {
  const auto res = stream_sparsify(random_stream(2, 8, 120), 8, 0.5, 0.05, Rng(4));
  ASSERT_FALSE(res.sparsifier.kept.empty());
  bool some_sampled = false;
  for (const auto& k : res.sparsifier.kept) {
    EXPECT_DOUBLE_EQ(k.edge.weight, 1.0 / k.p);
    some_sampled = some_sampled || k.p < 1.0;
  }
  EXPECT_TRUE(some_sampled);
}

TEST(Sparsify, LargeRhoKeepsEveryEdgeAndPreservesAllCuts) {
  const auto res = stream_sparsify(random_stream(3, 8, 100), 8, 0.25, 8.0, Rng(5));
  EXPECT_EQ(res.sparsifier.kept.size(), 100u);
  const auto rep = verify_sparsifier(res.input, res.sparsifier.as_hypergraph(), 0.25);
  EXPECT_EQ(rep.partitions_checked, 4139u);
  EXPECT_TRUE(rep.pass());
  EXPECT_DOUBLE_EQ(rep.worst_ratio_low, 1.0);
  EXPECT_DOUBLE_EQ(rep.worst_ratio_high, 1.0);
}

TEST(Sparsify, VerifierCountsFamilies) {
  const auto res = stream_sparsify(random_stream(4, 8, 50), 8, 0.25, 8.0, Rng(6));
  const auto two = verify_sparsifier(res.input, res.sparsifier.as_hypergraph(), 0.25, CutFamily::two_cuts());
  EXPECT_EQ(two.partitions_checked, 127u);
}

TEST(Sparsify, VerifierFlagsDoctoredSparsifier) {
  Hypergraph h(4);
  h.add_edge({0, 1});
  h.add_edge({1, 2});
  h.add_edge({2, 3});
  h.add_edge({0, 3});
  Hypergraph bad(4);
  bad.add_edge({0, 1});
  bad.add_edge({1, 2});
  bad.add_edge({2, 3});
  const auto rep = verify_sparsifier(h, bad, 0.25);
  EXPECT_FALSE(rep.pass());
  EXPECT_LT(rep.worst_ratio_low, 0.75);
  ASSERT_FALSE(rep.violations.empty());
  const auto& v = rep.violations.front();
  EXPECT_NEAR(v.ratio, cut_value(bad, v.partition) / cut_value(h, v.partition), 1e-12);
}

TEST(Sparsify, SizeAuditBounds) {
  const auto stream = random_stream(5, 8, 150);
  for (double k1 : {0.02, 0.2, 8.0}) {
    const auto res = stream_sparsify(stream, 8, 0.25, k1, Rng(7));
    const auto a = size_audit(res.sparsifier, 8, stream.size(), 0.25);
    EXPECT_TRUE(a.pass()) << k1;
    EXPECT_DOUBLE_EQ(a.weight_bound, 1.25 * 8 * 150 / 2.0);
    for (const auto& l : a.layers) {
      EXPECT_GE(l.kappa, 1.0);
      EXPECT_DOUBLE_EQ(l.bound, 8.0 * l.kappa * (1.0 + 1.0 / res.sparsifier.rho));
    }
  }
}

TEST(Sparsify, SizeAuditDetectsOverweight) {
  Sparsifier sp;
  sp.n = 4;
  sp.rho = 2.0;
  sp.kept.push_back({make_edge({0, 1}, 4, 100.0), 0.01, 1.0, 0});
  const auto a = size_audit(sp, 4, 1, 0.25);
  EXPECT_FALSE(a.weight_ok);
  EXPECT_FALSE(a.layers_ok);
}

TEST(Sparsify, ReinsertionAdversaryResendsRejectedEdge) {
  auto adv = reinsertion_adversary(8, 2, 4, 9);
  const auto res = run_edge_game(*adv, 8, 200, 0.5, 0.02, 11);
  const auto edges = res.input.edges();
  int resent = 0;
  for (std::size_t i = 1; i < res.decisions.size(); ++i) {
    if (!res.decisions[i - 1].coin && (i < 2 || res.decisions[i - 2].coin ||
                                       edges[i - 1].vertices != edges[i - 2].vertices)) {
      EXPECT_EQ(edges[i].vertices, edges[i - 1].vertices) << i;
      ++resent;
    }
  }
  EXPECT_GT(resent, 0);
}

TEST(Sparsify, GameIsDeterministic) {
  auto a1 = make_edge_adversary("reinsert", 7, 2, 3, 5);
  auto a2 = make_edge_adversary("reinsert", 7, 2, 3, 5);
  const auto r1 = run_edge_game(*a1, 7, 80, 0.4, 0.05, 2);
  const auto r2 = run_edge_game(*a2, 7, 80, 0.4, 0.05, 2);
  ASSERT_EQ(r1.decisions.size(), r2.decisions.size());
  for (std::size_t i = 0; i < r1.decisions.size(); ++i) {
    EXPECT_EQ(r1.decisions[i].coin, r2.decisions[i].coin);
    EXPECT_EQ(r1.decisions[i].strength, r2.decisions[i].strength);
  }
}

TEST(Sparsify, RejectsBadEdges) {
  StreamingSparsifier s(5, 0.25, 1.0, Rng(1));
  EXPECT_THROW(s.push({0}), std::invalid_argument);
  EXPECT_THROW(s.push({0, 7}), std::invalid_argument);
  EXPECT_THROW(make_edge_adversary("nope", 5, 2, 3, 1), std::invalid_argument);
  EXPECT_THROW(random_edge_adversary(5, 1, 3, 1), std::invalid_argument);
}
