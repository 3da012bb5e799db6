#include "robustis/partitions.hpp"

#include <stdexcept>

namespace robustis {

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) throw std::out_of_range("bell_number: n > 25 overflows 64 bits");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace robustis
