#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace robustis {

using Vertex = std::uint32_t;
using VertexMask = std::uint64_t;

/// Vertex-count ceiling for the exact (enumeration based) oracles.
inline constexpr std::size_t kDefaultMaxExactVertices = 12;

struct Hyperedge {
  std::vector<Vertex> vertices;  // sorted, distinct
  double weight = 1.0;

  VertexMask mask() const;
  std::size_t size() const { return vertices.size(); }
};

/// Validates and normalizes a vertex list: sorted, distinct, 2 <= |e| <= n,
/// every vertex < n. Throws std::invalid_argument otherwise.
Hyperedge make_edge(std::vector<Vertex> vertices, std::size_t n, double weight = 1.0);

class Hypergraph {
 public:
  explicit Hypergraph(std::size_t n);

  void add_edge(std::vector<Vertex> vertices, double weight = 1.0);
  void add_edge(Hyperedge edge);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Hyperedge> edges() const { return edges_; }
  double total_weight() const;

  /// Same vertex ids, only the edges contained in `vertices`.
  Hypergraph induced(VertexMask vertices) const;

 private:
  std::size_t n_;
  std::vector<Hyperedge> edges_;
};

/// A partition of {0..n-1} into nonempty blocks, stored as a block id per
/// vertex normalized to restricted-growth form (first occurrences 0,1,2,...).
class Partition {
 public:
  /// Throws std::invalid_argument for an empty assignment.
  static Partition from_assignment(std::vector<std::uint32_t> block_of);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Vertex>>& blocks);
  static Partition from_masks(std::size_t n, std::span<const VertexMask> blocks);

  std::size_t num_vertices() const { return block_of_.size(); }
  std::size_t num_blocks() const { return k_; }
  const std::vector<std::uint32_t>& assignment() const { return block_of_; }
  std::vector<VertexMask> block_masks() const;
  std::vector<std::vector<Vertex>> blocks() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> block_of_;
  std::size_t k_ = 0;
};

/// Total weight of hyperedges not contained in a single block. Throws
/// std::invalid_argument unless the partition covers H's vertices with k >= 2.
double cut_value(const Hypergraph& h, const Partition& partition);

/// inside[S] = total weight of edges contained in vertex set S, for every S.
/// Size 2^n; throws SizeLimitError when n > max_vertices.
class InsideTable {
 public:
  InsideTable(const Hypergraph& h, std::size_t max_vertices = kDefaultMaxExactVertices);

  std::size_t num_vertices() const { return n_; }
  double operator[](VertexMask s) const { return inside_[s]; }
  double total() const { return inside_.back(); }

  /// Adds `weight` to every superset of `edge` (an edge insertion).
  void add(VertexMask edge, double weight);

  /// Cut value of the partition with the given block masks.
  double cut(std::span<const VertexMask> blocks) const;

 private:
  std::size_t n_;
  std::vector<double> inside_;
};

inline VertexMask full_mask(std::size_t n) {
  return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

}  // namespace robustis
