#include "robustis/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "robustis/errors.hpp"
#include "robustis/parallel.hpp"

namespace robustis {

namespace {

constexpr double kFloorSlack = 1e-12;

double budget_left(const VisibleHistory& h, const SamplerConfig& c) {
  if (!h.x1) return c.delta_cap;  // first nonzero item becomes x1
  // Keep a hair below the cap so rounding never trips the referee.
  return std::max(0.0, c.delta_cap * *h.x1 * (1.0 - 1e-13) - h.true_sum);
}

class OnesStrategy final : public AdversaryStrategy {
 public:
  std::string name() const override { return "ones"; }
  Move next_move(const VisibleHistory&) override { return {1.0, std::nullopt}; }
};

class ProbabilityOneStrategy final : public AdversaryStrategy {
 public:
  std::string name() const override { return "p-one"; }
  Move next_move(const VisibleHistory&) override { return {1.0, 1.0}; }
};

// 1, 2, 4, ... until the next power would break the delta budget, then zeros.
class GeometricStrategy final : public AdversaryStrategy {
 public:
  explicit GeometricStrategy(const SamplerConfig& c) : config_(c) {}
  std::string name() const override { return "geometric"; }
  Move next_move(const VisibleHistory& h) override {
    if (exhausted_) return {0.0, std::nullopt};
    const double x = std::ldexp(1.0, static_cast<int>(h.records.size()));
    if (h.x1 && h.true_sum + x > config_.delta_cap * *h.x1) {
      exhausted_ = true;
      return {0.0, std::nullopt};
    }
    return {x, std::nullopt};
  }

 private:
  SamplerConfig config_;
  bool exhausted_ = false;
};

class DominantStrategy final : public AdversaryStrategy {
 public:
  DominantStrategy(const SamplerConfig& c, CandidateRule rule) : config_(c), rule_(rule) {}

  std::string name() const override {
    switch (rule_) {
      case CandidateRule::max_greedy: return "max-greedy";
      case CandidateRule::ratio_greedy: return "ratio-greedy";
      case CandidateRule::error_chaser: return "error-chaser";
    }
    return "dominant";
  }

  Move next_move(const VisibleHistory& h) override {
    const double chi = std::min(candidate(h), budget_left(h, config_));
    if (!(chi > 0.0)) return {0.0, std::nullopt};
    const double a = config_.amp;
    const double online = 2.0 * a * chi / (chi + h.estimate);
    const double floor = a * chi / (chi + h.true_sum);
    if (online < floor) return {0.0, std::nullopt};
    return {chi, std::min(online, 1.0)};
  }

 private:
  double candidate(const VisibleHistory& h) const {
    if (h.estimate <= 0.0) return 1.0;
    const double a = config_.amp;
    switch (rule_) {
      case CandidateRule::max_greedy:
        return std::numeric_limits<double>::infinity();
      case CandidateRule::ratio_greedy:
        // Var[x~] = chi*(chi + est)/(2a) - chi^2 peaks at chi = est/(4a - 2).
        return h.estimate / std::max(1.0, 4.0 * a - 2.0);
      case CandidateRule::error_chaser:
        if (h.estimate < h.true_sum) {
          // Largest chi that still leaves p < 1 under the 2a rule.
          return 0.999 * h.estimate / std::max(1.0, 2.0 * a - 1.0);
        }
        return 1e-6 * h.true_sum;
    }
    return 0.0;
  }

  SamplerConfig config_;
  CandidateRule rule_;
};

}  // namespace

std::unique_ptr<AdversaryStrategy> dominant_adaptive_strategy(const SamplerConfig& config,
                                                              CandidateRule rule) {
  return std::make_unique<DominantStrategy>(config, rule);
}

std::unique_ptr<AdversaryStrategy> make_strategy(std::string_view name, const SamplerConfig& config,
                                                 std::uint64_t /*seed*/) {
  if (name == "ones") return std::make_unique<OnesStrategy>();
  if (name == "p-one") return std::make_unique<ProbabilityOneStrategy>();
  if (name == "geometric") return std::make_unique<GeometricStrategy>(config);
  if (name == "max-greedy") return dominant_adaptive_strategy(config, CandidateRule::max_greedy);
  if (name == "ratio-greedy") return dominant_adaptive_strategy(config, CandidateRule::ratio_greedy);
  if (name == "error-chaser") return dominant_adaptive_strategy(config, CandidateRule::error_chaser);
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

StrategyFactory strategy_factory(std::string name) {
  make_strategy(name, SamplerConfig{}, 0);  // validate eagerly
  return [name](const SamplerConfig& c, std::uint64_t seed) { return make_strategy(name, c, seed); };
}

std::vector<std::string> strategy_names() {
  return {"ones", "geometric", "p-one", "max-greedy", "ratio-greedy", "error-chaser"};
}

double minimal_legal_probability(double amp, double x, double true_sum_including_x) {
  if (x == 0.0) return 0.0;
  return std::min(1.0, amp * x / true_sum_including_x);
}

GameTranscript play_game(AdversaryStrategy& strategy, const SamplerConfig& config,
                         std::uint64_t horizon, std::uint64_t seed) {
  config.validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  GameTranscript tr;
  tr.config = config;
  tr.rounds.reserve(horizon);
  std::vector<StepRecord> visible;
  visible.reserve(horizon);

  SamplerState state;
  Rng rng(seed);

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const VisibleHistory view{visible, state.true_sum, state.estimate, state.x1};
    const Move mv = strategy.next_move(view);

    if (!(mv.x >= 0.0) || !std::isfinite(mv.x)) throw IllegalMoveError(t, "item must be >= 0");
    if (mv.p && !(*mv.p > 0.0 && *mv.p <= 1.0)) {
      throw IllegalMoveError(t, "probability outside (0,1]");
    }

    std::optional<double> p;
    if (mv.x > 0.0) {
      const double x1 = state.x1.value_or(mv.x);
      if (state.true_sum + mv.x > config.delta_cap * x1 * (1.0 + kDeltaSlack)) {
        throw IllegalMoveError(t, "sum would exceed delta_cap * x1");
      }
      const double floor = minimal_legal_probability(config.amp, mv.x, state.true_sum + mv.x);
      p = mv.p.value_or(floor);
      if (*p < floor * (1.0 - kFloorSlack)) {
        throw IllegalMoveError(t, "probability " + std::to_string(*p) +
                                      " below the floor " + std::to_string(floor));
      }
    }

    const StepRecord rec = step(state, config, mv.x, p, rng);
    visible.push_back(rec);
    tr.rounds.push_back({rec, state.true_sum, state.estimate});

    if (state.true_sum > 0.0) {
      const double err = relative_error(state);
      tr.max_rel_error = std::max(tr.max_rel_error, err);
      if (err > config.epsilon && !tr.first_violation_round) {
        tr.first_violation_round = t;
        tr.outcome = Outcome::lose;
      }
    }
  }
  tr.sample_count = state.sample_count;
  return tr;
}

std::uint64_t sampler_seed(std::uint64_t master, std::uint64_t trial) {
  return derive_seed(master, trial);
}

std::uint64_t strategy_seed(std::uint64_t master, std::uint64_t trial) {
  return derive_seed(~master, trial);
}

TrialStats run_trials(const StrategyFactory& factory, const SamplerConfig& config,
                      std::uint64_t horizon, std::uint64_t n_trials, unsigned parallelism,
                      std::uint64_t master_seed, bool keep_transcripts) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  config.validate();

  auto results = ordered_parallel_map<GameTranscript>(n_trials, parallelism, [&](std::uint64_t i) {
    auto strat = factory(config, strategy_seed(master_seed, i));
    return play_game(*strat, config, horizon, sampler_seed(master_seed, i));
  });
  const std::string name = factory(config, strategy_seed(master_seed, 0))->name();

  TrialStats s;
  s.config = config;
  s.strategy = name;
  s.horizon = horizon;
  s.n_trials = n_trials;
  s.master_seed = master_seed;
  std::uint64_t wins = 0;
  double total_samples = 0.0;
  for (auto& tr : results) {
    s.outcomes.push_back(tr.outcome);
    s.samples.push_back(tr.sample_count);
    if (tr.outcome == Outcome::win) ++wins;
    total_samples += static_cast<double>(tr.sample_count);
    s.max_samples = std::max(s.max_samples, tr.sample_count);
    s.max_rel_error = std::max(s.max_rel_error, tr.max_rel_error);
  }
  s.win_rate = static_cast<double>(wins) / static_cast<double>(n_trials);
  s.mean_samples = total_samples / static_cast<double>(n_trials);
  if (keep_transcripts) s.transcripts = std::move(results);
  return s;
}

std::vector<std::uint64_t> referee_violations(const GameTranscript& tr) {
  std::vector<std::uint64_t> bad;
  double prev_true = 0.0;
  for (std::size_t i = 0; i < tr.rounds.size(); ++i) {
    const auto& r = tr.rounds[i];
    if (r.step.x > 0.0) {
      const double floor = minimal_legal_probability(tr.config.amp, r.step.x, prev_true + r.step.x);
      if (r.step.p < floor * (1.0 - kFloorSlack)) bad.push_back(i + 1);
    }
    prev_true = r.true_sum;
  }
  return bad;
}

}  // namespace robustis
