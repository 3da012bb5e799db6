#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace robustis {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads (round-robin) and
/// returns the results in index order. The first failing index is rethrown
/// with its message prefixed by "trial i: "; invalid_argument stays
/// invalid_argument, anything else becomes runtime_error.
template <typename Result, typename Fn>
std::vector<Result> ordered_parallel_map(std::uint64_t n, unsigned jobs, Fn&& fn) {
  std::vector<Result> results(n);
  std::vector<std::exception_ptr> errors(n);
  auto run_one = [&](std::uint64_t i) {
    try {
      results[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto workers = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, n)));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < n; i += workers) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("trial " + std::to_string(i) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(i) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace robustis
