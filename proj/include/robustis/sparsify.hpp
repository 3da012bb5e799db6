#pragma once

// Online hypergraph cut sparsification by strength sampling.
//
// Each arriving edge e is kept with probability p = min{rho / kappa, 1},
// where kappa is its strength in (current sparsifier + e), and gets weight
// 1/p. rho = K1 * eps^-2 * n * ln n.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robustis/hypergraph.hpp"
#include "robustis/rng.hpp"
#include "robustis/strength.hpp"

namespace robustis {

inline constexpr double kDefaultSparsifyK1 = 8.0;

/// K1 * eps^-2 * n * ln n (natural log).
double sparsifier_rho(double k1, double epsilon, std::size_t n);

struct KeptEdge {
  Hyperedge edge;  // edge.weight == 1/p
  double p = 1.0;
  double strength = 0.0;  // strength at insertion
  std::uint64_t arrival = 0;  // 0-based stream position
};

struct Sparsifier {
  std::size_t n = 0;
  double rho = 0.0;
  std::vector<KeptEdge> kept;

  Hypergraph as_hypergraph() const;
  double total_weight() const;
};

struct EdgeDecision {
  std::uint64_t arrival = 0;
  double strength = 0.0;
  double p = 1.0;
  bool coin = false;
};

/// Stateful streaming sparsifier; push() returns the coin before the next
/// edge can be read.
class StreamingSparsifier {
 public:
  StreamingSparsifier(std::size_t n, double epsilon, double k1, Rng rng,
                      std::unique_ptr<StrengthOracle> oracle = nullptr);

  /// Throws std::invalid_argument for malformed edges (vertex >= n, repeats,
  /// fewer than 2 vertices); SizeLimitError from the oracle.
  EdgeDecision push(std::vector<Vertex> vertices);

  const Sparsifier& sparsifier() const { return sparsifier_; }
  const Hypergraph& input() const { return input_; }
  std::span<const EdgeDecision> decisions() const { return decisions_; }

 private:
  Sparsifier sparsifier_;
  Hypergraph current_;  // sparsifier as a weighted hypergraph
  Hypergraph input_;    // every edge seen, weight 1
  std::vector<EdgeDecision> decisions_;
  Rng rng_;
  std::unique_ptr<StrengthOracle> oracle_;
};

struct SparsifyResult {
  std::vector<EdgeDecision> decisions;
  Sparsifier sparsifier;
  Hypergraph input{0};
};

SparsifyResult stream_sparsify(std::span<const std::vector<Vertex>> edge_stream, std::size_t n,
                               double epsilon, double k1, Rng rng);

/// Which partitions verify_sparsifier enumerates.
struct CutFamily {
  std::vector<std::size_t> ks;  // empty = every k in [2, n]

  static CutFamily all() { return {}; }
  static CutFamily two_cuts() { return {{2}}; }
  bool contains(std::size_t k) const;
};

struct CutViolation {
  Partition partition;
  double ratio = 0.0;
};

struct VerificationReport {
  std::uint64_t partitions_checked = 0;
  double worst_ratio_low = 1.0;
  double worst_ratio_high = 1.0;
  std::uint64_t violation_count = 0;
  std::vector<CutViolation> violations;  // at most max_listed
  bool pass() const { return violation_count == 0; }
};

/// Checks cut_{H'}(P) in [(1-eps), (1+eps)] * cut_H(P) for every partition P
/// in the family. Cuts of value 0 in H are skipped unless H' cuts them.
VerificationReport verify_sparsifier(const Hypergraph& h, const Hypergraph& sparsifier,
                                     double epsilon, const CutFamily& family = CutFamily::all(),
                                     std::size_t max_vertices = kDefaultMaxExactVertices,
                                     std::size_t max_listed = 64);

struct LayerAudit {
  double kappa = 0.0;
  double weight = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct SizeAudit {
  std::size_t kept = 0;
  double total_weight = 0.0;
  double weight_bound = 0.0;  // (1+eps) n m / 2
  bool weight_ok = true;
  double kappa_star = 0.0;  // (1+eps) rho n m / 2
  std::vector<LayerAudit> layers;  // F_kappa weight vs n kappa (1 + 1/rho)
  bool layers_ok = true;
  double c_size = 1.0;
  double size_bound = 0.0;  // c_size * rho * n * ln(kappa_star + 1)
  bool size_ok = true;
  bool pass() const { return weight_ok && layers_ok && size_ok; }
};

/// Size audits over a finished sparsifier of an m-edge stream. Layers are
/// audited at every distinct insertion strength >= 1: the layer weight is a
/// step function of kappa and the bound increases with kappa, so these
/// points cover all kappa >= 1.
SizeAudit size_audit(const Sparsifier& sparsifier, std::size_t n, std::size_t m, double epsilon,
                     double c_size = 1.0);

/// Adversary choosing the next edge after seeing every earlier coin.
class EdgeAdversary {
 public:
  virtual ~EdgeAdversary() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Vertex> next_edge(std::span<const std::vector<Vertex>> sent,
                                        std::span<const EdgeDecision> decisions) = 0;
};

/// Uniform random edges with size uniform in [min_size, max_size].
std::unique_ptr<EdgeAdversary> random_edge_adversary(std::size_t n, std::size_t min_size,
                                                     std::size_t max_size, std::uint64_t seed);

/// Re-inserts the most recently rejected edge (each rejection once);
/// otherwise sends a fresh random edge.
std::unique_ptr<EdgeAdversary> reinsertion_adversary(std::size_t n, std::size_t min_size,
                                                     std::size_t max_size, std::uint64_t seed);

std::unique_ptr<EdgeAdversary> make_edge_adversary(const std::string& name, std::size_t n,
                                                   std::size_t min_size, std::size_t max_size,
                                                   std::uint64_t seed);

/// Plays m rounds of adversary vs sparsifier.
SparsifyResult run_edge_game(EdgeAdversary& adversary, std::size_t n, std::size_t m,
                             double epsilon, double k1, std::uint64_t seed);

}  // namespace robustis
