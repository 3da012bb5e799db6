#include "robustis/subspace.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "robustis/errors.hpp"

namespace robustis {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// IntegerSpan

struct IntegerSpan::Impl {
  std::vector<std::vector<cpp_int>> basis;  // echelon rows, zero at earlier pivots
  std::vector<std::size_t> pivots;

  std::vector<cpp_int> reduce(std::span<const std::int64_t> row) const {
    std::vector<cpp_int> r(row.begin(), row.end());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::size_t c = pivots[i];
      if (r[c] == 0) continue;
      const cpp_int f = r[c];
      const cpp_int g = basis[i][c];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = g * r[j] - f * basis[i][j];
      normalize(r);
    }
    return r;
  }

  static void normalize(std::vector<cpp_int>& r) {
    cpp_int g = 0;
    for (const auto& v : r) {
      if (v != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
    }
    if (g > 1) {
      for (auto& v : r) v /= g;
    }
  }
};

IntegerSpan::IntegerSpan(std::size_t d) : d_(d), impl_(std::make_unique<Impl>()) {}
IntegerSpan::~IntegerSpan() = default;
IntegerSpan::IntegerSpan(const IntegerSpan& o) : d_(o.d_), impl_(std::make_unique<Impl>(*o.impl_)) {}
IntegerSpan& IntegerSpan::operator=(const IntegerSpan& o) {
  if (this != &o) {
    d_ = o.d_;
    impl_ = std::make_unique<Impl>(*o.impl_);
  }
  return *this;
}
IntegerSpan::IntegerSpan(IntegerSpan&&) noexcept = default;
IntegerSpan& IntegerSpan::operator=(IntegerSpan&&) noexcept = default;

bool IntegerSpan::contains(std::span<const std::int64_t> row) const {
  if (row.size() != d_) throw std::invalid_argument("row dimension mismatch");
  const auto r = impl_->reduce(row);
  return std::all_of(r.begin(), r.end(), [](const cpp_int& v) { return v == 0; });
}

bool IntegerSpan::insert(std::span<const std::int64_t> row) {
  if (row.size() != d_) throw std::invalid_argument("row dimension mismatch");
  auto r = impl_->reduce(row);
  const auto it = std::find_if(r.begin(), r.end(), [](const cpp_int& v) { return v != 0; });
  if (it == r.end()) return false;
  impl_->pivots.push_back(static_cast<std::size_t>(it - r.begin()));
  impl_->basis.push_back(std::move(r));
  return true;
}

std::size_t IntegerSpan::rank() const { return impl_->basis.size(); }

// ---------------------------------------------------------------------------
// WeightedRowSet

namespace {

Eigen::VectorXd to_vector(std::span<const std::int64_t> a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = static_cast<double>(a[i]);
  return v;
}

bool is_zero(std::span<const std::int64_t> a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

// Top-`rank` eigenvectors of a symmetric PSD matrix.
Eigen::MatrixXd top_eigenvectors(const Eigen::MatrixXd& gram, std::size_t rank) {
  const auto d = gram.rows();
  if (rank == 0) return Eigen::MatrixXd(d, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const auto r = static_cast<Eigen::Index>(rank);
  return es.eigenvectors().rightCols(r);
}

double power_sum(const Eigen::VectorXd& v, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return s;
}

double weighted_power_sum(std::span<const KeptRow> rows, const Eigen::VectorXd& x, double p) {
  double s = 0.0;
  for (const auto& k : rows) s += k.weight() * std::pow(std::abs(to_vector(k.row).dot(x)), p);
  return s;
}

}  // namespace

WeightedRowSet::WeightedRowSet(std::size_t d, double p_norm, double rho, double lambda,
                               SpanTest span_test)
    : d_(d),
      p_norm_(p_norm),
      rho_(rho),
      lambda_(lambda),
      span_test_(span_test),
      span_(d),
      gram_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))),
      gram_w_(gram_),
      basis_(static_cast<Eigen::Index>(d), 0) {
  if (d == 0) throw std::invalid_argument("dimension must be >= 1");
  if (!(p_norm > 0.0)) throw std::invalid_argument("p must be positive");
}

void WeightedRowSet::add(KeptRow row) {
  if (row.row.size() != d_) throw std::invalid_argument("row dimension mismatch");
  if (!(row.prob > 0.0 && row.prob <= 1.0)) throw std::invalid_argument("kept probability outside (0,1]");
  const Eigen::VectorXd v = to_vector(row.row);
  gram_ += v * v.transpose();
  gram_w_ += row.weight() * v * v.transpose();
  const bool grew = span_.insert(row.row);
  rows_.push_back(std::move(row));
  if (grew) refresh_basis();
}

void WeightedRowSet::refresh_basis() { basis_ = top_eigenvectors(gram_, span_.rank()); }

bool WeightedRowSet::in_span(std::span<const std::int64_t> a) const {
  if (span_test_ == SpanTest::exact) return span_.contains(a);
  const Eigen::VectorXd v = to_vector(a);
  const Eigen::VectorXd resid = v - basis_ * (basis_.transpose() * v);
  return resid.norm() <= 1e-9 * v.norm();
}

double WeightedRowSet::estimate(const Eigen::VectorXd& x) const {
  return weighted_power_sum(rows_, x, p_norm_);
}

// ---------------------------------------------------------------------------
// Sensitivities

double ridge_leverage(std::span<const std::int64_t> a, const WeightedRowSet& kept) {
  const Eigen::MatrixXd& q = kept.basis();
  const Eigen::VectorXd c = q.transpose() * to_vector(a);
  Eigen::MatrixXd n = q.transpose() * kept.weighted_gram() * q;
  n.diagonal().array() += kept.lambda();
  return c.dot(n.ldlt().solve(c));
}

double maximize_sensitivity(std::span<const std::int64_t> a, const WeightedRowSet& kept,
                            int restarts, std::uint64_t seed) {
  const Eigen::MatrixXd& q = kept.basis();
  const Eigen::Index r = q.cols();
  if (r == 0) return 0.0;
  const double p = kept.p_norm();
  const double lambda = kept.lambda();
  const Eigen::VectorXd c = q.transpose() * to_vector(a);

  const auto m = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd b(r, m);
  Eigen::VectorXd w(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& k = kept.rows()[static_cast<std::size_t>(j)];
    b.col(j) = q.transpose() * to_vector(k.row);
    w[j] = k.weight();
  }

  auto log_ratio = [&](const Eigen::VectorXd& y) {
    const double num = std::abs(c.dot(y));
    if (num == 0.0) return -std::numeric_limits<double>::infinity();
    const Eigen::VectorXd z = b.transpose() * y;
    double den = lambda * power_sum(q * y, p);
    for (Eigen::Index j = 0; j < m; ++j) den += w[j] * std::pow(std::abs(z[j]), p);
    return p * std::log(num) - std::log(den);
  };

  auto gradient = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd z = b.transpose() * y;
    const Eigen::VectorXd x = q * y;
    auto dpow = [p](double t) {
      const double mag = std::max(std::abs(t), 1e-300);
      return p * std::pow(mag, p - 1.0) * (t < 0.0 ? -1.0 : 1.0);
    };
    double den = lambda * power_sum(x, p);
    Eigen::VectorXd dden = Eigen::VectorXd::Zero(r);
    for (Eigen::Index j = 0; j < m; ++j) {
      den += w[j] * std::pow(std::abs(z[j]), p);
      dden += w[j] * dpow(z[j]) * b.col(j);
    }
    Eigen::VectorXd dx(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) dx[i] = dpow(x[i]);
    dden += lambda * (q.transpose() * dx);
    return Eigen::VectorXd(p * c / c.dot(y) - dden / den);
  };

  auto ascend = [&](Eigen::VectorXd y) {
    y.normalize();
    double f = log_ratio(y);
    double step = 1.0;
    for (int it = 0; it < 300 && std::isfinite(f); ++it) {
      Eigen::VectorXd g = gradient(y);
      g -= g.dot(y) * y;
      const double gg = g.squaredNorm();
      if (!(gg > 1e-24)) break;
      bool moved = false;
      for (; step > 1e-12; step *= 0.5) {
        Eigen::VectorXd cand = (y + step * g).normalized();
        const double fc = log_ratio(cand);
        if (fc > f + 1e-4 * step * gg) {
          y = std::move(cand);
          f = fc;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      step = std::min(1.0, step * 2.0);
    }
    return f;
  };

  Eigen::MatrixXd n = q.transpose() * kept.weighted_gram() * q;
  n.diagonal().array() += lambda;
  double best = ascend(n.ldlt().solve(c));
  Rng rng(seed);
  for (int s = 0; s < restarts; ++s) {
    Eigen::VectorXd y(r);
    for (Eigen::Index i = 0; i < r; ++i) y[i] = rng.normal();
    if (y.norm() == 0.0) continue;
    best = std::max(best, ascend(y));
  }
  return std::exp(best);
}

double online_sensitivity(std::span<const std::int64_t> a, const WeightedRowSet& kept) {
  if (a.size() != kept.dim()) throw std::invalid_argument("row dimension mismatch");
  if (!(kept.lambda() > 0.0)) throw std::invalid_argument("ridge lambda must be positive");
  if (is_zero(a)) return 0.0;
  if (!kept.in_span(a)) return 1.0;
  if (kept.p_norm() == 2.0) return std::min(1.0, ridge_leverage(a, kept));
  std::uint64_t seed = splitmix64(kept.size());
  for (auto v : a) seed = splitmix64(seed ^ static_cast<std::uint64_t>(v));
  const double found = maximize_sensitivity(a, kept, kSensitivityRestarts, seed);
  return std::min(1.0, kSensitivitySafetyFactor * found);
}

double ridge_lambda(std::size_t n_bound, std::int64_t entry_bound, double p, std::size_t d) {
  if (n_bound < 1 || entry_bound < 1) throw std::invalid_argument("bounds must be >= 1");
  const double exponent = (p + 1.0) * static_cast<double>(d) + p;
  const double base = static_cast<double>(n_bound) * static_cast<double>(entry_bound);
  return std::max(std::exp(-exponent * std::log(base)), DBL_MIN);
}

double embed_rho(double k1, double epsilon, std::size_t d, double kappa_ol_bound,
                 std::size_t n_bound) {
  const double nn = static_cast<double>(n_bound);
  const double loglog = n_bound >= 3 ? std::log(std::log(nn)) : 0.0;
  return k1 / (epsilon * epsilon) *
         (static_cast<double>(d) * std::log(kappa_ol_bound / epsilon) + loglog);
}

void EmbedParams::validate() const {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(kappa_ol_bound >= 1.0)) throw std::invalid_argument("kappa_ol bound must be >= 1");
  if (!(k1 > 0.0)) throw std::invalid_argument("K1 must be positive");
  if (entry_bound < 1) throw std::invalid_argument("entry bound must be >= 1");
  if (n_bound < 1) throw std::invalid_argument("n bound must be >= 1");
}

// ---------------------------------------------------------------------------
// Streaming

StreamingEmbedder::StreamingEmbedder(EmbedParams params, Rng rng)
    : params_((params.validate(), params)),
      kept_(params.d, params.p,
            embed_rho(params.k1, params.epsilon, params.d, params.kappa_ol_bound, params.n_bound),
            ridge_lambda(params.n_bound, params.entry_bound, params.p, params.d), params.span_test),
      rng_(rng) {
  transcript_.params = params_;
  transcript_.rho = kept_.rho();
  transcript_.lambda = kept_.lambda();
}

EmbedStep StreamingEmbedder::push(IntRow row) {
  if (row.size() != params_.d) throw std::invalid_argument("row dimension mismatch");
  for (auto v : row) {
    if (v < -params_.entry_bound || v > params_.entry_bound) {
      throw std::invalid_argument("row entry " + std::to_string(v) + " outside [-B, B]");
    }
  }
  EmbedStep st;
  st.index = transcript_.steps.size();
  st.s_prime = online_sensitivity(row, kept_);
  if (st.s_prime > 0.0) {
    st.p = std::min(kept_.rho() * st.s_prime, 1.0);
    st.coin = rng_.bernoulli(st.p);
  }
  if (st.coin) kept_.add({row, st.p, st.s_prime, st.index});
  transcript_.rows.push_back(std::move(row));
  transcript_.steps.push_back(st);
  return st;
}

EmbedResult stream_embed(std::span<const IntRow> rows, const EmbedParams& params, Rng rng) {
  StreamingEmbedder e(params, rng);
  for (const auto& r : rows) e.push(r);
  return {e.transcript(), e.kept()};
}

// ---------------------------------------------------------------------------
// Verification and audits

Eigen::MatrixXd to_matrix(std::span<const IntRow> rows, std::size_t d) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw std::invalid_argument("row dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(rows[i][j]);
    }
  }
  return a;
}

double online_condition_number(std::span<const IntRow> rows, std::size_t d) {
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dd, dd);
  IntegerSpan span(d);
  double min_sv = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    const Eigen::VectorXd v = to_vector(row);
    gram += v * v.transpose();
    span.insert(row);
    const auto r = static_cast<Eigen::Index>(span.rank());
    if (r == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    min_sv = std::min(min_sv, std::sqrt(std::max(0.0, es.eigenvalues()[dd - r])));
  }
  if (!std::isfinite(min_sv) || min_sv == 0.0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(es.eigenvalues()[dd - 1]) / min_sv;
}

EmbeddingReport verify_embedding(std::span<const IntRow> rows, const WeightedRowSet& kept, double p,
                                 double epsilon, const VerifyOptions& options) {
  const std::size_t d = kept.dim();
  const Eigen::MatrixXd a = to_matrix(rows, d);
  IntegerSpan span(d);
  for (const auto& r : rows) span.insert(r);
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::MatrixXd q = top_eigenvectors(gram, span.rank());
  const Eigen::Index r = q.cols();

  EmbeddingReport rep;
  rep.mode = (p == 2.0 && !options.force_net) ? "pencil" : "net";
  if (r == 0) return rep;

  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  auto record = [&](double ratio) {
    low = std::min(low, ratio);
    high = std::max(high, ratio);
  };

  if (rep.mode == "pencil") {
    const Eigen::MatrixXd b = q.transpose() * gram * q;
    const Eigen::MatrixXd c = q.transpose() * kept.weighted_gram() * q;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(c, b, Eigen::EigenvaluesOnly);
    rep.directions_tested = static_cast<std::uint64_t>(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      rep.eigenvalues.push_back(ges.eigenvalues()[i]);
      record(ges.eigenvalues()[i]);
    }
  } else {
    double h = options.net_resolution;
    if (!(h > 0.0)) h = epsilon / online_condition_number(rows, d);
    const auto per_axis = static_cast<std::uint64_t>(std::ceil(2.0 / h)) + 1;
    const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(r)) -
                         std::pow(static_cast<double>(per_axis - 2), static_cast<double>(r));
    if (total > static_cast<double>(options.max_net_points)) {
      throw SizeLimitError("net with " + std::to_string(total) + " points exceeds the limit of " +
                           std::to_string(options.max_net_points));
    }
    std::vector<std::uint64_t> idx(static_cast<std::size_t>(r), 0);
    Eigen::VectorXd y(r);
    while (true) {
      bool on_face = false;
      for (Eigen::Index i = 0; i < r; ++i) {
        const auto k = idx[static_cast<std::size_t>(i)];
        on_face = on_face || k == 0 || k == per_axis - 1;
        y[i] = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(per_axis - 1);
      }
      if (on_face) {
        const Eigen::VectorXd x = q * y;
        const double base = power_sum(a * x, p);
        if (base > 0.0) {
          record(weighted_power_sum(kept.rows(), x, p) / base);
          ++rep.directions_tested;
        }
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == per_axis) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  if (rep.directions_tested > 0) {
    rep.worst_low = low;
    rep.worst_high = high;
  }
  rep.pass = rep.worst_low >= 1.0 - epsilon && rep.worst_high <= 1.0 + epsilon;
  return rep;
}

RidgeImplication check_ridge_implication(std::span<const IntRow> rows, const WeightedRowSet& kept,
                                         double epsilon,
                                         std::span<const Eigen::VectorXd> directions) {
  const Eigen::MatrixXd a = to_matrix(rows, kept.dim());
  const double p = kept.p_norm();
  RidgeImplication out;
  for (const auto& x : directions) {
    const double exact = power_sum(a * x, p);
    if (exact == 0.0) continue;
    ++out.directions;
    const double approx = kept.estimate(x);
    const double ridge = kept.lambda() * power_sum(x, p);
    const double ridge_ratio = (approx + ridge) / (exact + ridge);
    const double plain_ratio = approx / exact;
    if (ridge_ratio >= 1.0 - epsilon && ridge_ratio <= 1.0 + epsilon) {
      ++out.premise_held;
      if (plain_ratio < 1.0 - 2.0 * epsilon || plain_ratio > 1.0 + 2.0 * epsilon) {
        ++out.implication_failures;
      }
    }
  }
  return out;
}

SensitivityAudit sensitivity_sum_audit(const EmbedTranscript& tr, double c_audit) {
  SensitivityAudit au;
  for (const auto& s : tr.steps) {
    au.sensitivity_sum += s.s_prime;
    if (s.coin) ++au.kept;
  }
  au.rho = tr.rho;
  au.kept_bound = 2.0 * tr.rho * au.sensitivity_sum;
  au.kept_ok = static_cast<double>(au.kept) <= au.kept_bound;
  au.kappa_ol = online_condition_number(tr.rows, tr.params.d);
  au.c_audit = c_audit;
  const double n = static_cast<double>(tr.rows.size());
  const double shape = static_cast<double>(tr.params.d) * std::log(n * au.kappa_ol);
  au.sum_bound = c_audit * std::pow(shape, std::max(1.0, tr.params.p / 2.0));
  au.sum_ok = au.sensitivity_sum <= au.sum_bound;
  return au;
}

// ---------------------------------------------------------------------------
// Row adversaries

namespace {

IntRow uniform_row(Rng& rng, std::size_t d, std::int64_t bound) {
  IntRow r(d);
  for (auto& v : r) v = rng.uniform_int(-bound, bound);
  return r;
}

class UniformRows final : public RowAdversary {
 public:
  UniformRows(std::size_t d, std::int64_t bound, std::uint64_t seed) : d_(d), bound_(bound), rng_(seed) {}
  std::string name() const override { return "uniform"; }
  IntRow next_row(std::span<const IntRow>, std::span<const EmbedStep>) override {
    return uniform_row(rng_, d_, bound_);
  }

 private:
  std::size_t d_;
  std::int64_t bound_;
  Rng rng_;
};

class GaussianRows final : public RowAdversary {
 public:
  GaussianRows(std::size_t d, std::int64_t bound, double sigma, std::uint64_t seed)
      : d_(d), bound_(bound), sigma_(sigma), rng_(seed) {}
  std::string name() const override { return "gaussian"; }
  IntRow next_row(std::span<const IntRow>, std::span<const EmbedStep>) override {
    IntRow r(d_);
    const auto b = static_cast<double>(bound_);
    for (auto& v : r) v = static_cast<std::int64_t>(std::clamp(std::round(sigma_ * rng_.normal()), -b, b));
    return r;
  }

 private:
  std::size_t d_;
  std::int64_t bound_;
  double sigma_;
  Rng rng_;
};

class Resubmission final : public RowAdversary {
 public:
  Resubmission(std::size_t d, std::int64_t bound, std::uint64_t seed) : d_(d), bound_(bound), rng_(seed) {}
  std::string name() const override { return "resubmit"; }
  IntRow next_row(std::span<const IntRow> sent, std::span<const EmbedStep> steps) override {
    if (!steps.empty() && !steps.back().coin && !last_was_resubmit_) {
      last_was_resubmit_ = true;
      return sent.back();
    }
    last_was_resubmit_ = false;
    return uniform_row(rng_, d_, bound_);
  }

 private:
  std::size_t d_;
  std::int64_t bound_;
  Rng rng_;
  bool last_was_resubmit_ = false;
};

}  // namespace

std::unique_ptr<RowAdversary> uniform_row_adversary(std::size_t d, std::int64_t bound,
                                                    std::uint64_t seed) {
  return std::make_unique<UniformRows>(d, bound, seed);
}

std::unique_ptr<RowAdversary> gaussian_row_adversary(std::size_t d, std::int64_t bound,
                                                     double sigma, std::uint64_t seed) {
  return std::make_unique<GaussianRows>(d, bound, sigma, seed);
}

std::unique_ptr<RowAdversary> resubmission_adversary(std::size_t d, std::int64_t bound,
                                                     std::uint64_t seed) {
  return std::make_unique<Resubmission>(d, bound, seed);
}

std::unique_ptr<RowAdversary> make_row_adversary(const std::string& name, std::size_t d,
                                                 std::int64_t bound, std::uint64_t seed) {
  if (name == "uniform") return uniform_row_adversary(d, bound, seed);
  if (name == "gaussian") return gaussian_row_adversary(d, bound, static_cast<double>(bound) / 3.0, seed);
  if (name == "resubmit") return resubmission_adversary(d, bound, seed);
  throw std::invalid_argument("unknown row adversary '" + name + "'");
}

EmbedResult run_row_game(RowAdversary& adversary, std::size_t n, const EmbedParams& params,
                         std::uint64_t seed) {
  StreamingEmbedder e(params, Rng(seed));
  std::vector<IntRow> sent;
  sent.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = adversary.next_row(sent, e.transcript().steps);
    sent.push_back(row);
    e.push(std::move(row));
  }
  return {e.transcript(), e.kept()};
}

}  // namespace robustis
