#pragma once

// Online row sampling for l_p subspace embeddings.
//
// Row a_i is kept with probability p_i = min{rho * s_i, 1}, where s_i is its
// online ridge sensitivity against the rows kept so far:
//
//   s_i = max_{x in span(kept)} |a_i.x|^p / (sum_j |a_j.x|^p / p_j + lambda |x|_p^p)
//
// and s_i = 1 when a_i leaves span(kept). Kept rows are stored unscaled
// together with p_j; the estimator weights |a_j.x|^p by 1/p_j.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "robustis/rng.hpp"

namespace robustis {

using IntRow = std::vector<std::int64_t>;

/// Exact row-span membership for integer vectors (fraction-free elimination
/// over arbitrary-precision integers).
class IntegerSpan {
 public:
  explicit IntegerSpan(std::size_t d);
  ~IntegerSpan();
  IntegerSpan(const IntegerSpan&);
  IntegerSpan& operator=(const IntegerSpan&);
  IntegerSpan(IntegerSpan&&) noexcept;
  IntegerSpan& operator=(IntegerSpan&&) noexcept;

  bool contains(std::span<const std::int64_t> row) const;
  /// Adds the row; returns true when the rank grew.
  bool insert(std::span<const std::int64_t> row);
  std::size_t rank() const;
  std::size_t dim() const { return d_; }

 private:
  struct Impl;
  std::size_t d_;
  std::unique_ptr<Impl> impl_;
};

enum class SpanTest {
  exact,     // integer elimination
  residual,  // |a - proj(a)| <= 1e-9 |a|
};

struct KeptRow {
  IntRow row;
  double prob = 1.0;
  double s_prime = 1.0;
  std::uint64_t index = 0;  // stream position

  double weight() const { return 1.0 / prob; }
};

/// Retained rows plus the sampling parameters.
class WeightedRowSet {
 public:
  WeightedRowSet(std::size_t d, double p_norm, double rho, double lambda,
                 SpanTest span_test = SpanTest::exact);

  std::size_t dim() const { return d_; }
  double p_norm() const { return p_norm_; }
  double rho() const { return rho_; }
  double lambda() const { return lambda_; }
  SpanTest span_test() const { return span_test_; }
  std::span<const KeptRow> rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  void add(KeptRow row);

  bool in_span(std::span<const std::int64_t> a) const;

  /// Orthonormal basis (d x r) of span(kept rows).
  const Eigen::MatrixXd& basis() const { return basis_; }
  /// sum_j (1/p_j) a_j a_j^T.
  const Eigen::MatrixXd& weighted_gram() const { return gram_w_; }

  /// sum_j (1/p_j) |a_j.x|^p.
  double estimate(const Eigen::VectorXd& x) const;

 private:
  void refresh_basis();

  std::size_t d_;
  double p_norm_;
  double rho_;
  double lambda_;
  SpanTest span_test_;
  std::vector<KeptRow> rows_;
  IntegerSpan span_;
  Eigen::MatrixXd gram_;    // unweighted, for the span basis
  Eigen::MatrixXd gram_w_;  // weighted
  Eigen::MatrixXd basis_;
};

/// Online sensitivity of `a` against `kept`: 1 outside the span, the ridge
/// leverage closed form for p == 2, and a safety-scaled numerical maximum
/// otherwise. Zero rows have sensitivity 0. Throws std::invalid_argument on
/// a dimension mismatch or lambda <= 0.
double online_sensitivity(std::span<const std::int64_t> a, const WeightedRowSet& kept);

/// Ridge leverage a^T (Q^T G Q + lambda I)^-1 a on the span basis Q,
/// unclipped. `a` must lie in span(kept).
double ridge_leverage(std::span<const std::int64_t> a, const WeightedRowSet& kept);

/// Projected gradient ascent for the sensitivity ratio (any p > 0) over the
/// span, started from the p = 2 maximizer and `restarts` random points.
/// Returns the best ratio found (a lower bound on the true maximum).
double maximize_sensitivity(std::span<const std::int64_t> a, const WeightedRowSet& kept,
                            int restarts, std::uint64_t seed);

inline constexpr double kSensitivitySafetyFactor = 1.25;
inline constexpr int kSensitivityRestarts = 20;

/// (n_bound * entry_bound)^-((p+1) d + p), clamped to the smallest normal double.
double ridge_lambda(std::size_t n_bound, std::int64_t entry_bound, double p, std::size_t d);

/// K1 * eps^-2 * (d ln(kappa/eps) + ln ln n); the ln ln term is dropped for n < 3.
double embed_rho(double k1, double epsilon, std::size_t d, double kappa_ol_bound,
                 std::size_t n_bound);

struct EmbedParams {
  std::size_t d = 1;
  double p = 2.0;
  double epsilon = 0.25;
  double kappa_ol_bound = 1e4;
  double k1 = 1.0;
  std::int64_t entry_bound = 100;
  std::size_t n_bound = 1000;
  SpanTest span_test = SpanTest::exact;

  void validate() const;
};

struct EmbedStep {
  std::uint64_t index = 0;
  double s_prime = 0.0;
  double p = 0.0;
  bool coin = false;
};

struct EmbedTranscript {
  EmbedParams params;
  double rho = 0.0;
  double lambda = 0.0;
  std::vector<IntRow> rows;  // every row seen
  std::vector<EmbedStep> steps;
};

/// Stateful row sampler; push() returns the coin before the next row.
class StreamingEmbedder {
 public:
  StreamingEmbedder(EmbedParams params, Rng rng);

  /// Throws std::invalid_argument for a wrong dimension or an entry outside
  /// [-entry_bound, entry_bound].
  EmbedStep push(IntRow row);

  const WeightedRowSet& kept() const { return kept_; }
  const EmbedTranscript& transcript() const { return transcript_; }

 private:
  EmbedParams params_;
  WeightedRowSet kept_;
  EmbedTranscript transcript_;
  Rng rng_;
};

struct EmbedResult {
  EmbedTranscript transcript;
  WeightedRowSet kept;
};

EmbedResult stream_embed(std::span<const IntRow> rows, const EmbedParams& params, Rng rng);

/// Rows as a dense n x d matrix.
Eigen::MatrixXd to_matrix(std::span<const IntRow> rows, std::size_t d);

/// Largest singular value of the full matrix over the smallest nonzero
/// singular value across all prefixes (1 for an all-zero stream).
double online_condition_number(std::span<const IntRow> rows, std::size_t d);

struct EmbeddingReport {
  std::string mode;  // "pencil" or "net"
  std::uint64_t directions_tested = 0;
  double worst_low = 1.0;
  double worst_high = 1.0;
  bool pass = true;
  std::vector<double> eigenvalues;  // pencil mode
};

struct VerifyOptions {
  double net_resolution = 0.0;  // 0: epsilon / kappa_ol
  std::uint64_t max_net_points = 2'000'000;
  bool force_net = false;
};

/// p == 2: generalized eigenvalues of (At^T At, A^T A) on row-span(A), all
/// required in [1-eps, 1+eps]. Otherwise a grid net over directions of
/// row-span(A); SizeLimitError when the net exceeds max_net_points.
EmbeddingReport verify_embedding(std::span<const IntRow> rows, const WeightedRowSet& kept,
                                 double p, double epsilon, const VerifyOptions& options = {});

struct RidgeImplication {
  std::uint64_t directions = 0;
  std::uint64_t premise_held = 0;
  std::uint64_t implication_failures = 0;
};

/// For each direction x: if the ridge-augmented estimate is within
/// (1 +- eps), the plain estimate must be within (1 +- 2 eps).
RidgeImplication check_ridge_implication(std::span<const IntRow> rows, const WeightedRowSet& kept,
                                         double epsilon, std::span<const Eigen::VectorXd> directions);

struct SensitivityAudit {
  double sensitivity_sum = 0.0;
  std::size_t kept = 0;
  double rho = 0.0;
  double kept_bound = 0.0;  // 2 rho S
  bool kept_ok = true;
  double kappa_ol = 1.0;
  double c_audit = 4.0;
  double sum_bound = 0.0;  // c (d ln(n kappa))^max(1, p/2)
  bool sum_ok = true;
  bool pass() const { return kept_ok && sum_ok; }
};

SensitivityAudit sensitivity_sum_audit(const EmbedTranscript& transcript, double c_audit = 4.0);

/// Adaptive row source.
class RowAdversary {
 public:
  virtual ~RowAdversary() = default;
  virtual std::string name() const = 0;
  virtual IntRow next_row(std::span<const IntRow> sent, std::span<const EmbedStep> steps) = 0;
};

/// Uniform integer entries in [-bound, bound].
std::unique_ptr<RowAdversary> uniform_row_adversary(std::size_t d, std::int64_t bound,
                                                    std::uint64_t seed);
/// round(sigma * N(0,1)) clipped to [-bound, bound].
std::unique_ptr<RowAdversary> gaussian_row_adversary(std::size_t d, std::int64_t bound,
                                                     double sigma, std::uint64_t seed);
/// Re-submits a row right after it was rejected (once), else a uniform row.
std::unique_ptr<RowAdversary> resubmission_adversary(std::size_t d, std::int64_t bound,
                                                     std::uint64_t seed);
std::unique_ptr<RowAdversary> make_row_adversary(const std::string& name, std::size_t d,
                                                 std::int64_t bound, std::uint64_t seed);

EmbedResult run_row_game(RowAdversary& adversary, std::size_t n, const EmbedParams& params,
                         std::uint64_t seed);

}  // namespace robustis
