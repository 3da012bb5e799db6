#pragma once

// Set-partition enumeration by restricted growth strings: a[0] = 0 and
// a[i] <= 1 + max(a[0..i-1]). Each string is one partition; strings are
// visited in lexicographic order, so n elements yield Bell(n) visits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "robustis/hypergraph.hpp"

namespace robustis {

/// Bell number B_n for n <= 25 (fits in 64 bits).
std::uint64_t bell_number(std::size_t n);

/// Calls visit(rgs, k) for every partition of {0..n-1}; k = number of blocks.
template <typename Visit>
void for_each_rgs(std::size_t n, Visit&& visit) {
  if (n == 0) return;
  std::vector<std::uint8_t> a(n, 0);
  std::vector<std::uint8_t> m(n, 0);  // m[i] = max(a[0..i])
  while (true) {
    visit(std::span<const std::uint8_t>(a), static_cast<std::size_t>(m[n - 1]) + 1);
    std::size_t i = n - 1;
    while (i > 0 && a[i] == m[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    m[i] = std::max(m[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      m[j] = m[i];
    }
  }
}

/// Calls visit(block_masks) for every partition of the vertex set `set`.
template <typename Visit>
void for_each_partition_of(VertexMask set, Visit&& visit) {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < 64; ++v) {
    if (set >> v & 1) members.push_back(v);
  }
  std::vector<VertexMask> blocks;
  for_each_rgs(members.size(), [&](std::span<const std::uint8_t> rgs, std::size_t k) {
    blocks.assign(k, 0);
    for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]] |= VertexMask{1} << members[i];
    visit(std::span<const VertexMask>(blocks));
  });
}

}  // namespace robustis
