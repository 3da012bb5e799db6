#include "robustis/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "robustis/partitions.hpp"

namespace robustis {

double sparsifier_rho(double k1, double epsilon, std::size_t n) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(k1 > 0.0)) throw std::invalid_argument("K1 must be positive");
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  const double nd = static_cast<double>(n);
  return k1 / (epsilon * epsilon) * nd * std::log(nd);
}

Hypergraph Sparsifier::as_hypergraph() const {
  Hypergraph h(n);
  for (const auto& k : kept) h.add_edge(k.edge);
  return h;
}

double Sparsifier::total_weight() const {
  double w = 0.0;
  for (const auto& k : kept) w += k.edge.weight;
  return w;
}

StreamingSparsifier::StreamingSparsifier(std::size_t n, double epsilon, double k1, Rng rng,
                                         std::unique_ptr<StrengthOracle> oracle)
    : current_(n), input_(n), rng_(rng), oracle_(std::move(oracle)) {
  sparsifier_.n = n;
  sparsifier_.rho = sparsifier_rho(k1, epsilon, n);
  if (!oracle_) oracle_ = std::make_unique<ExactStrengthOracle>();
}

EdgeDecision StreamingSparsifier::push(std::vector<Vertex> vertices) {
  Hyperedge edge = make_edge(std::move(vertices), sparsifier_.n, 1.0);
  EdgeDecision d;
  d.arrival = decisions_.size();
  d.strength = oracle_->strength_with_edge(current_, edge);
  d.p = std::min(sparsifier_.rho / d.strength, 1.0);
  d.coin = rng_.bernoulli(d.p);
  input_.add_edge(edge);
  if (d.coin) {
    edge.weight = 1.0 / d.p;
    current_.add_edge(edge);
    sparsifier_.kept.push_back({std::move(edge), d.p, d.strength, d.arrival});
  }
  decisions_.push_back(d);
  return d;
}

SparsifyResult stream_sparsify(std::span<const std::vector<Vertex>> edge_stream, std::size_t n,
                               double epsilon, double k1, Rng rng) {
  StreamingSparsifier s(n, epsilon, k1, rng);
  for (const auto& e : edge_stream) s.push(e);
  return {{s.decisions().begin(), s.decisions().end()}, s.sparsifier(), s.input()};
}

bool CutFamily::contains(std::size_t k) const {
  return ks.empty() || std::find(ks.begin(), ks.end(), k) != ks.end();
}

VerificationReport verify_sparsifier(const Hypergraph& h, const Hypergraph& sparsifier,
                                     double epsilon, const CutFamily& family,
                                     std::size_t max_vertices, std::size_t max_listed) {
  if (h.num_vertices() != sparsifier.num_vertices()) {
    throw std::invalid_argument("hypergraph and sparsifier have different vertex counts");
  }
  const std::size_t n = h.num_vertices();
  const InsideTable in_h(h, max_vertices);
  const InsideTable in_s(sparsifier, max_vertices);

  VerificationReport rep;
  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  for_each_partition_of(full_mask(n), [&](std::span<const VertexMask> blocks) {
    const std::size_t k = blocks.size();
    if (k < 2 || !family.contains(k)) return;
    ++rep.partitions_checked;
    const double base = in_h.cut(blocks);
    const double approx = in_s.cut(blocks);
    double ratio;
    if (base == 0.0) {
      if (approx == 0.0) return;
      ratio = std::numeric_limits<double>::infinity();
    } else {
      ratio = approx / base;
    }
    low = std::min(low, ratio);
    high = std::max(high, ratio);
    if (ratio < 1.0 - epsilon || ratio > 1.0 + epsilon) {
      ++rep.violation_count;
      if (rep.violations.size() < max_listed) {
        rep.violations.push_back({Partition::from_masks(n, blocks), ratio});
      }
    }
  });
  if (low <= high) {
    rep.worst_ratio_low = low;
    rep.worst_ratio_high = high;
  }
  return rep;
}

SizeAudit size_audit(const Sparsifier& sparsifier, std::size_t n, std::size_t m, double epsilon,
                     double c_size) {
  SizeAudit a;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  a.kept = sparsifier.kept.size();
  a.total_weight = sparsifier.total_weight();
  a.weight_bound = (1.0 + epsilon) * nd * md / 2.0;
  a.weight_ok = a.total_weight <= a.weight_bound;

  a.kappa_star = (1.0 + epsilon) * sparsifier.rho * nd * md / 2.0;
  std::map<double, double> weight_at;  // insertion strength -> weight
  for (const auto& k : sparsifier.kept) weight_at[k.strength] += k.edge.weight;
  double cumulative = 0.0;
  for (const auto& [kappa, w] : weight_at) {
    cumulative += w;
    if (kappa < 1.0) continue;
    LayerAudit layer;
    layer.kappa = kappa;
    layer.weight = cumulative;
    layer.bound = nd * kappa * (1.0 + 1.0 / sparsifier.rho);
    layer.ok = layer.weight <= layer.bound;
    a.layers_ok = a.layers_ok && layer.ok;
    a.layers.push_back(layer);
  }

  a.c_size = c_size;
  a.size_bound = c_size * sparsifier.rho * nd * std::log(a.kappa_star + 1.0);
  a.size_ok = static_cast<double>(a.kept) <= a.size_bound;
  return a;
}

namespace {

std::vector<Vertex> random_edge(Rng& rng, std::size_t n, std::size_t lo, std::size_t hi) {
  const auto size = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  std::vector<Vertex> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Vertex>(i);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_sizes(std::size_t n, std::size_t lo, std::size_t hi) {
  if (lo < 2 || hi < lo || hi > n) throw std::invalid_argument("edge sizes must satisfy 2 <= min <= max <= n");
}

class RandomEdgeAdversary final : public EdgeAdversary {
 public:
  RandomEdgeAdversary(std::size_t n, std::size_t lo, std::size_t hi, std::uint64_t seed)
      : n_(n), lo_(lo), hi_(hi), rng_(seed) {
    check_sizes(n, lo, hi);
  }
  std::string name() const override { return "random"; }
  std::vector<Vertex> next_edge(std::span<const std::vector<Vertex>>,
                                std::span<const EdgeDecision>) override {
    return random_edge(rng_, n_, lo_, hi_);
  }

 private:
  std::size_t n_, lo_, hi_;
  Rng rng_;
};

class ReinsertionAdversary final : public EdgeAdversary {
 public:
  ReinsertionAdversary(std::size_t n, std::size_t lo, std::size_t hi, std::uint64_t seed)
      : n_(n), lo_(lo), hi_(hi), rng_(seed) {
    check_sizes(n, lo, hi);
  }
  std::string name() const override { return "reinsert"; }
  std::vector<Vertex> next_edge(std::span<const std::vector<Vertex>> sent,
                                std::span<const EdgeDecision> decisions) override {
    if (!decisions.empty() && !decisions.back().coin && !last_was_reinsert_) {
      last_was_reinsert_ = true;
      return sent.back();
    }
    last_was_reinsert_ = false;
    return random_edge(rng_, n_, lo_, hi_);
  }

 private:
  std::size_t n_, lo_, hi_;
  Rng rng_;
  bool last_was_reinsert_ = false;
};

}  // namespace

std::unique_ptr<EdgeAdversary> random_edge_adversary(std::size_t n, std::size_t min_size,
                                                     std::size_t max_size, std::uint64_t seed) {
  return std::make_unique<RandomEdgeAdversary>(n, min_size, max_size, seed);
}

std::unique_ptr<EdgeAdversary> reinsertion_adversary(std::size_t n, std::size_t min_size,
                                                     std::size_t max_size, std::uint64_t seed) {
  return std::make_unique<ReinsertionAdversary>(n, min_size, max_size, seed);
}

std::unique_ptr<EdgeAdversary> make_edge_adversary(const std::string& name, std::size_t n,
                                                   std::size_t min_size, std::size_t max_size,
                                                   std::uint64_t seed) {
  if (name == "random") return random_edge_adversary(n, min_size, max_size, seed);
  if (name == "reinsert") return reinsertion_adversary(n, min_size, max_size, seed);
  throw std::invalid_argument("unknown edge adversary '" + name + "'");
}

SparsifyResult run_edge_game(EdgeAdversary& adversary, std::size_t n, std::size_t m,
                             double epsilon, double k1, std::uint64_t seed) {
  StreamingSparsifier s(n, epsilon, k1, Rng(seed));
  std::vector<std::vector<Vertex>> sent;
  sent.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto e = adversary.next_edge(sent, s.decisions());
    sent.push_back(e);
    s.push(std::move(e));
  }
  return {{s.decisions().begin(), s.decisions().end()}, s.sparsifier(), s.input()};
}

}  // namespace robustis
