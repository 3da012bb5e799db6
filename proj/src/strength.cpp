#include "robustis/strength.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "robustis/errors.hpp"
#include "robustis/partitions.hpp"

namespace robustis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Fn>
void for_each_superset(VertexMask base, VertexMask universe, Fn&& fn) {
  const VertexMask rest = universe & ~base;
  VertexMask sub = rest;
  while (true) {
    fn(base | sub);
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
}

}  // namespace

NormalizedCut min_normalized_cut(const Hypergraph& h, std::size_t max_vertices) {
  const std::size_t n = h.num_vertices();
  if (n < 2) throw std::invalid_argument("normalized cuts need at least 2 vertices");
  const InsideTable inside(h, max_vertices);

  double best = kInf;
  std::vector<std::uint8_t> best_rgs;
  for_each_rgs(n, [&](std::span<const std::uint8_t> rgs, std::size_t k) {
    if (k < 2) return;
    VertexMask blocks[64] = {};
    for (std::size_t v = 0; v < n; ++v) blocks[rgs[v]] |= VertexMask{1} << v;
    const double value = inside.cut({blocks, k}) / static_cast<double>(k - 1);
    if (value < best) {
      best = value;
      best_rgs.assign(rgs.begin(), rgs.end());
    }
  });
  return {best, Partition::from_assignment({best_rgs.begin(), best_rgs.end()})};
}

LambdaOracle::LambdaOracle(const Hypergraph& h, std::size_t max_vertices)
    : inside_(h, max_vertices),
      memo_(std::size_t{1} << h.num_vertices(), std::numeric_limits<double>::quiet_NaN()) {}

double LambdaOracle::lambda(VertexMask set) {
  if (std::popcount(set) < 2) throw std::invalid_argument("lambda needs at least 2 vertices");
  double& slot = memo_[set];
  if (!std::isnan(slot)) return slot;
  double best = kInf;
  for_each_partition_of(set, [&](std::span<const VertexMask> blocks) {
    if (blocks.size() < 2) return;
    best = std::min(best, inside_.cut(blocks) / static_cast<double>(blocks.size() - 1));
  });
  slot = best;
  return best;
}

double LambdaOracle::strength(VertexMask edge) {
  double best = -kInf;
  for_each_superset(edge, full_mask(inside_.num_vertices()),
                    [&](VertexMask s) { best = std::max(best, lambda(s)); });
  return best;
}

double strength(const Hyperedge& edge, const Hypergraph& h, std::size_t max_vertices) {
  LambdaOracle oracle(h, max_vertices);
  return oracle.strength(make_edge(edge.vertices, h.num_vertices()).mask());
}

std::vector<double> lambda_all_subsets_dp(const InsideTable& inside) {
  const std::size_t n = inside.num_vertices();
  const std::size_t size = std::size_t{1} << n;
  // best[k][S]: max total inside-weight over partitions of S into k blocks.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(size, -kInf));
  std::vector<double> lam(size, kInf);
  for (VertexMask s = 1; s < size; ++s) {
    const int pc = std::popcount(s);
    best[1][s] = inside[s];
    if (pc < 2) continue;
    const VertexMask low = s & (~s + 1);
    const VertexMask rest = s ^ low;
    // Proper subsets of `rest` give the block holding the lowest vertex.
    for (VertexMask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const VertexMask block = sub | low;
      const VertexMask remainder = s ^ block;
      const double head = inside[block];
      const int rem_pc = std::popcount(remainder);
      for (int k = 2; k <= rem_pc + 1; ++k) {
        const double tail = best[k - 1][remainder];
        if (tail == -kInf) continue;
        best[k][s] = std::max(best[k][s], head + tail);
      }
      if (sub == 0) break;
    }
    for (int k = 2; k <= pc; ++k) {
      lam[s] = std::min(lam[s], (inside[s] - best[k][s]) / static_cast<double>(k - 1));
    }
  }
  return lam;
}

double min_normalized_cut_dp(const Hypergraph& h, std::size_t max_vertices) {
  if (h.num_vertices() < 2) throw std::invalid_argument("normalized cuts need at least 2 vertices");
  const InsideTable inside(h, max_vertices);
  return lambda_all_subsets_dp(inside)[full_mask(h.num_vertices())];
}

double strength_dp(const Hyperedge& edge, const Hypergraph& h, std::size_t max_vertices) {
  const InsideTable inside(h, max_vertices);
  const auto lam = lambda_all_subsets_dp(inside);
  double best = -kInf;
  for_each_superset(make_edge(edge.vertices, h.num_vertices()).mask(), full_mask(h.num_vertices()),
                    [&](VertexMask s) { best = std::max(best, lam[s]); });
  return best;
}

double strongest_component_lambda(const Hypergraph& h, std::size_t max_vertices) {
  if (h.num_vertices() < 2) throw std::invalid_argument("need at least 2 vertices");
  LambdaOracle oracle(h, max_vertices);
  double best = -kInf;
  for (VertexMask s = 1; s <= full_mask(h.num_vertices()); ++s) {
    if (std::popcount(s) >= 2) best = std::max(best, oracle.lambda(s));
  }
  return best;
}

double ExactStrengthOracle::strength_with_edge(const Hypergraph& current, const Hyperedge& edge) {
  InsideTable inside(current, max_vertices_);
  const VertexMask e = edge.mask();
  inside.add(e, 1.0);
  const auto lam = lambda_all_subsets_dp(inside);
  double best = -kInf;
  for_each_superset(e, full_mask(current.num_vertices()),
                    [&](VertexMask s) { best = std::max(best, lam[s]); });
  return best;
}

double EnumerationStrengthOracle::strength_with_edge(const Hypergraph& current,
                                                     const Hyperedge& edge) {
  Hypergraph with = current;
  with.add_edge(edge.vertices, 1.0);
  LambdaOracle oracle(with, max_vertices_);
  return oracle.strength(edge.mask());
}

}  // namespace robustis
