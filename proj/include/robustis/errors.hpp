#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace robustis {

/// A parameter is outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The running sum exceeded delta_cap times the first nonzero item.
class DeltaContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact oracle was asked to enumerate past its configured size limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A game move rejected by the referee. `round` is 1-based.
class IllegalMoveError : public std::runtime_error {
 public:
  IllegalMoveError(std::uint64_t round, const std::string& reason)
      : std::runtime_error("illegal move in round " + std::to_string(round) + ": " + reason),
        round_(round) {}

  std::uint64_t round() const noexcept { return round_; }

 private:
  std::uint64_t round_;
};

}  // namespace robustis
