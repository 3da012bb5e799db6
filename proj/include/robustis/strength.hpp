#pragma once

// Exact normalized-cut and hyperedge-strength oracles for small hypergraphs.
//
//   lambda(H)  = min over k-cuts (k >= 2) of cut / (k - 1)
//   kappa_e(H) = max over W of lambda(H[W u e])
//
// Two independent routes are provided. The primary route enumerates set
// partitions by restricted growth strings, memoizing lambda per vertex set.
// The second route is a subset DP that peels off the block containing the
// lowest vertex; it never materializes a partition.

#include <cstddef>
#include <memory>
#include <vector>

#include "robustis/hypergraph.hpp"

namespace robustis {

struct NormalizedCut {
  double lambda = 0.0;
  Partition witness;
};

/// Exact minimum normalized cut over every k-cut of H, with a minimizing
/// partition. Throws SizeLimitError above max_vertices and
/// std::invalid_argument for n < 2.
NormalizedCut min_normalized_cut(const Hypergraph& h,
                                 std::size_t max_vertices = kDefaultMaxExactVertices);

/// Memoized lambda(H[S]) over vertex sets S of one fixed hypergraph.
class LambdaOracle {
 public:
  explicit LambdaOracle(const Hypergraph& h, std::size_t max_vertices = kDefaultMaxExactVertices);

  /// lambda of the sub-hypergraph induced by `set`; |set| >= 2.
  double lambda(VertexMask set);

  /// max over supersets S of `edge` of lambda(H[S]).
  double strength(VertexMask edge);

  const InsideTable& inside() const { return inside_; }

 private:
  InsideTable inside_;
  std::vector<double> memo_;  // NaN = not yet computed
};

/// Exact strength of `edge` in H (enumeration route).
double strength(const Hyperedge& edge, const Hypergraph& h,
                std::size_t max_vertices = kDefaultMaxExactVertices);

/// Second route: lambda(H[S]) for every S (infinity when |S| < 2).
std::vector<double> lambda_all_subsets_dp(const InsideTable& inside);

double min_normalized_cut_dp(const Hypergraph& h,
                             std::size_t max_vertices = kDefaultMaxExactVertices);
double strength_dp(const Hyperedge& edge, const Hypergraph& h,
                   std::size_t max_vertices = kDefaultMaxExactVertices);

/// max over vertex sets C with |C| >= 2 of lambda(H[C]); a hypergraph with
/// total weight >= alpha*(n-1) has some C reaching alpha.
double strongest_component_lambda(const Hypergraph& h,
                                  std::size_t max_vertices = kDefaultMaxExactVertices);

/// Plug-in point for the streaming sparsifier: strength of a new unit-weight
/// edge inside the current sparsifier plus that edge.
class StrengthOracle {
 public:
  virtual ~StrengthOracle() = default;
  virtual double strength_with_edge(const Hypergraph& current, const Hyperedge& edge) = 0;
};

/// Exact oracle backed by the subset DP.
class ExactStrengthOracle final : public StrengthOracle {
 public:
  explicit ExactStrengthOracle(std::size_t max_vertices = kDefaultMaxExactVertices)
      : max_vertices_(max_vertices) {}
  double strength_with_edge(const Hypergraph& current, const Hyperedge& edge) override;

 private:
  std::size_t max_vertices_;
};

/// Exact oracle backed by partition enumeration (slower; used for checks).
class EnumerationStrengthOracle final : public StrengthOracle {
 public:
  explicit EnumerationStrengthOracle(std::size_t max_vertices = kDefaultMaxExactVertices)
      : max_vertices_(max_vertices) {}
  double strength_with_edge(const Hypergraph& current, const Hyperedge& edge) override;

 private:
  std::size_t max_vertices_;
};

}  // namespace robustis
