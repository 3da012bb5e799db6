#include "robustis/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "robustis/errors.hpp"

namespace robustis {

VertexMask Hyperedge::mask() const {
  VertexMask m = 0;
  for (Vertex v : vertices) m |= VertexMask{1} << v;
  return m;
}

Hyperedge make_edge(std::vector<Vertex> vertices, std::size_t n, double weight) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw std::invalid_argument("hyperedge has a repeated vertex");
  }
  if (vertices.size() < 2) throw std::invalid_argument("hyperedge needs at least 2 vertices");
  if (vertices.back() >= n) {
    throw std::invalid_argument("vertex " + std::to_string(vertices.back()) +
                                " out of range for n = " + std::to_string(n));
  }
  if (!(weight >= 0.0)) throw std::invalid_argument("hyperedge weight must be >= 0");
  return Hyperedge{std::move(vertices), weight};
}

Hypergraph::Hypergraph(std::size_t n) : n_(n) {
  if (n > 64) throw std::invalid_argument("at most 64 vertices are supported");
}

void Hypergraph::add_edge(std::vector<Vertex> vertices, double weight) {
  edges_.push_back(make_edge(std::move(vertices), n_, weight));
}

void Hypergraph::add_edge(Hyperedge edge) {
  edges_.push_back(make_edge(std::move(edge.vertices), n_, edge.weight));
}

double Hypergraph::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges_) w += e.weight;
  return w;
}

Hypergraph Hypergraph::induced(VertexMask vertices) const {
  Hypergraph sub(n_);
  for (const auto& e : edges_) {
    if ((e.mask() & ~vertices) == 0) sub.edges_.push_back(e);
  }
  return sub;
}

Partition Partition::from_assignment(std::vector<std::uint32_t> block_of) {
  if (block_of.empty()) throw std::invalid_argument("partition of an empty vertex set");
  Partition p;
  p.block_of_.resize(block_of.size());
  std::vector<std::int64_t> map;
  for (std::size_t v = 0; v < block_of.size(); ++v) {
    const auto b = block_of[v];
    if (b >= map.size()) map.resize(b + 1, -1);
    if (map[b] < 0) map[b] = static_cast<std::int64_t>(p.k_++);
    p.block_of_[v] = static_cast<std::uint32_t>(map[b]);
  }
  return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Vertex>>& blocks) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> block_of(n, kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("partition block is empty");
    for (Vertex v : blocks[b]) {
      if (v >= n) throw std::invalid_argument("partition vertex out of range");
      if (block_of[v] != kUnset) throw std::invalid_argument("partition blocks overlap");
      block_of[v] = static_cast<std::uint32_t>(b);
    }
  }
  if (std::find(block_of.begin(), block_of.end(), kUnset) != block_of.end()) {
    throw std::invalid_argument("partition does not cover every vertex");
  }
  return from_assignment(std::move(block_of));
}

Partition Partition::from_masks(std::size_t n, std::span<const VertexMask> blocks) {
  std::vector<std::vector<Vertex>> lists;
  for (VertexMask m : blocks) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < 64; ++v) {
      if (m >> v & 1) vs.push_back(v);
    }
    lists.push_back(std::move(vs));
  }
  return from_blocks(n, lists);
}

std::vector<VertexMask> Partition::block_masks() const {
  std::vector<VertexMask> masks(k_, 0);
  for (std::size_t v = 0; v < block_of_.size(); ++v) masks[block_of_[v]] |= VertexMask{1} << v;
  return masks;
}

std::vector<std::vector<Vertex>> Partition::blocks() const {
  std::vector<std::vector<Vertex>> out(k_);
  for (std::size_t v = 0; v < block_of_.size(); ++v) {
    out[block_of_[v]].push_back(static_cast<Vertex>(v));
  }
  return out;
}

double cut_value(const Hypergraph& h, const Partition& partition) {
  if (partition.num_vertices() != h.num_vertices()) {
    throw std::invalid_argument("partition size does not match the hypergraph");
  }
  if (partition.num_blocks() < 2) throw std::invalid_argument("a cut needs at least 2 blocks");
  const auto& block_of = partition.assignment();
  double cut = 0.0;
  for (const auto& e : h.edges()) {
    const auto b = block_of[e.vertices.front()];
    const bool crosses = std::any_of(e.vertices.begin(), e.vertices.end(),
                                     [&](Vertex v) { return block_of[v] != b; });
    if (crosses) cut += e.weight;
  }
  return cut;
}

InsideTable::InsideTable(const Hypergraph& h, std::size_t max_vertices) : n_(h.num_vertices()) {
  if (n_ > max_vertices) {
    throw SizeLimitError("exact oracle limited to " + std::to_string(max_vertices) +
                         " vertices, got " + std::to_string(n_));
  }
  inside_.assign(std::size_t{1} << n_, 0.0);
  for (const auto& e : h.edges()) inside_[e.mask()] += e.weight;
  // Subset-sum (zeta) transform.
  for (std::size_t i = 0; i < n_; ++i) {
    const VertexMask bit = VertexMask{1} << i;
    for (VertexMask s = 0; s < inside_.size(); ++s) {
      if (s & bit) inside_[s] += inside_[s ^ bit];
    }
  }
}

void InsideTable::add(VertexMask edge, double weight) {
  const VertexMask rest = full_mask(n_) & ~edge;
  // Walk every subset of the complement.
  VertexMask sub = rest;
  while (true) {
    inside_[edge | sub] += weight;
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
}

double InsideTable::cut(std::span<const VertexMask> blocks) const {
  double kept = 0.0;
  VertexMask all = 0;
  for (VertexMask b : blocks) {
    kept += inside_[b];
    all |= b;
  }
  return inside_[all] - kept;
}

}  // namespace robustis
