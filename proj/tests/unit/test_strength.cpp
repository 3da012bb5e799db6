#include <gtest/gtest.h>

#include <algorithm>
#include <bit>

#include "robustis/errors.hpp"
#include "robustis/rng.hpp"
#include "robustis/strength.hpp"

using namespace robustis;

namespace {

Hypergraph complete_graph(std::size_t n) {
  Hypergraph h(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) h.add_edge({i, j});
  }
  return h;
}

Hypergraph random_hypergraph(Rng& rng, std::size_t n, int edges, bool weighted) {
  Hypergraph h(n);
  for (int e = 0; e < edges; ++e) {
    const auto size = static_cast<std::size_t>(rng.uniform_int(2, std::min<std::int64_t>(4, n)));
    std::vector<Vertex> vs;
    while (vs.size() < size) {
      const auto v = static_cast<Vertex>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    h.add_edge(vs, weighted ? static_cast<double>(rng.uniform_int(1, 3)) : 1.0);
  }
  return h;
}

}  // namespace

// Expected values come from tests/oracles/oracles.py (exact rationals).
TEST(Strength, FrozenSmallCases) {
  const auto k3 = complete_graph(3);
  EXPECT_DOUBLE_EQ(min_normalized_cut(k3).lambda, 1.5);
  EXPECT_DOUBLE_EQ(strength(make_edge({0, 1}, 3), k3), 1.5);

  Hypergraph one(3);
  one.add_edge({0, 1, 2});
  EXPECT_DOUBLE_EQ(min_normalized_cut(one).lambda, 0.5);
  EXPECT_DOUBLE_EQ(strength(make_edge({0, 1, 2}, 3), one), 0.5);

  EXPECT_DOUBLE_EQ(min_normalized_cut(complete_graph(4)).lambda, 2.0);

  Hypergraph mixed(5);
  mixed.add_edge({0, 1, 2}, 2.0);
  mixed.add_edge({2, 3});
  mixed.add_edge({3, 4});
  mixed.add_edge({0, 4});
  mixed.add_edge({1, 3, 4});
  EXPECT_DOUBLE_EQ(min_normalized_cut(mixed).lambda, 1.5);
  EXPECT_DOUBLE_EQ(strength(make_edge({2, 3}, 5), mixed), 1.5);
  EXPECT_DOUBLE_EQ(strength(make_edge({0, 1, 2}, 5), mixed), 1.5);

  Hypergraph pendant(5);
  for (Vertex i = 0; i < 4; ++i) {
    for (Vertex j = i + 1; j < 4; ++j) pendant.add_edge({i, j});
  }
  pendant.add_edge({3, 4});
  EXPECT_DOUBLE_EQ(min_normalized_cut(pendant).lambda, 1.0);
  EXPECT_DOUBLE_EQ(strength(make_edge({3, 4}, 5), pendant), 1.0);
  EXPECT_DOUBLE_EQ(strength(make_edge({0, 1}, 5), pendant), 2.0);
}

TEST(Strength, WitnessAttainsLambda) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_hypergraph(rng, 6, 10, true);
    const auto nc = min_normalized_cut(h);
    const double k = static_cast<double>(nc.witness.num_blocks());
    EXPECT_GE(k, 2.0);
    EXPECT_NEAR(cut_value(h, nc.witness) / (k - 1.0), nc.lambda, 1e-12);
  }
}

TEST(Strength, EnumerationAndSubsetDpAgreeExactly) {
  Rng rng(2024);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 7));
    const auto h = random_hypergraph(rng, n, static_cast<int>(rng.uniform_int(1, 12)), i % 2 == 0);
    EXPECT_EQ(min_normalized_cut(h).lambda, min_normalized_cut_dp(h));
    for (const auto& e : h.edges()) EXPECT_EQ(strength(e, h), strength_dp(e, h));
  }
}

TEST(Strength, StrengthAtLeastLambda) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_hypergraph(rng, 6, 9, false);
    const double lam = min_normalized_cut(h).lambda;
    for (const auto& e : h.edges()) EXPECT_GE(strength(e, h), lam);
  }
}

TEST(Strength, StrongComponentExists) {
  Rng rng(10);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 7));
    const auto h = random_hypergraph(rng, n, static_cast<int>(rng.uniform_int(1, 14)), true);
    const double alpha = h.total_weight() / static_cast<double>(n - 1);
    EXPECT_GE(strongest_component_lambda(h), alpha * (1.0 - 1e-12));
  }
}

TEST(Strength, LambdaOracleMemoMatchesInduced) {
  Rng rng(12);
  const auto h = random_hypergraph(rng, 6, 12, true);
  LambdaOracle oracle(h);
  for (VertexMask s = 0; s < 64; ++s) {
    if (std::popcount(s) < 2) continue;
    Hypergraph sub(static_cast<std::size_t>(std::popcount(s)));
    std::vector<Vertex> index(6, 0);
    Vertex next = 0;
    for (Vertex v = 0; v < 6; ++v) {
      if (s >> v & 1) index[v] = next++;
    }
    for (const auto& e : h.edges()) {
      if ((e.mask() & s) != e.mask()) continue;
      std::vector<Vertex> vs;
      for (auto v : e.vertices) vs.push_back(index[v]);
      sub.add_edge(vs, e.weight);
    }
    EXPECT_EQ(oracle.lambda(s), min_normalized_cut(sub).lambda);
  }
}

TEST(Strength, OraclesAgreeOnInsertion) {
  Rng rng(14);
  ExactStrengthOracle dp;
  EnumerationStrengthOracle en;
  for (int i = 0; i < 20; ++i) {
    const auto h = random_hypergraph(rng, 6, 8, true);
    const auto e = make_edge({static_cast<Vertex>(rng.uniform_int(0, 2)), 4, 5}, 6);
    EXPECT_EQ(dp.strength_with_edge(h, e), en.strength_with_edge(h, e));
  }
}

TEST(Strength, RejectsTooLargeOrTooSmall) {
  EXPECT_THROW(min_normalized_cut(Hypergraph(13)), SizeLimitError);
  EXPECT_THROW(min_normalized_cut(Hypergraph(1)), std::invalid_argument);
}
