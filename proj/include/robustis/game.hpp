#pragma once

// Two-player sampling game: an adversary picks each item and its sampling
// probability, constrained by the true running sum; the sampler flips the
// coin. The sampler wins if every prefix estimate is within (1 +- eps) of
// the prefix sum.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "robustis/sampler.hpp"

namespace robustis {

/// What a strategy may see: the sampler's past outputs and sums derived from
/// them. No generator state is reachable from here.
struct VisibleHistory {
  std::span<const StepRecord> records;
  double true_sum = 0.0;
  double estimate = 0.0;
  std::optional<double> x1;

  std::uint64_t round() const { return records.size() + 1; }
};

/// An item and its probability. Without `p` the referee uses the smallest
/// legal probability min{1, a*x / (true sum including x)}.
struct Move {
  double x = 0.0;
  std::optional<double> p;
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual std::string name() const = 0;
  virtual Move next_move(const VisibleHistory& history) = 0;
};

using StrategyFactory =
    std::function<std::unique_ptr<AdversaryStrategy>(const SamplerConfig&, std::uint64_t seed)>;

/// Inner generators for the dominant strategy.
enum class CandidateRule {
  max_greedy,    // largest item the delta budget allows
  ratio_greedy,  // item maximizing the round's conditional variance
  error_chaser,  // large while the estimate undershoots, tiny otherwise
};

/// Strategy from the correctness reduction: propose a candidate, play it with
/// p = min{2a*chi/(chi + estimate), 1} if that satisfies the game constraint,
/// otherwise play 0.
std::unique_ptr<AdversaryStrategy> dominant_adaptive_strategy(const SamplerConfig& config,
                                                              CandidateRule rule);

/// Built-in strategies: ones, geometric, p-one, max-greedy, ratio-greedy,
/// error-chaser. Throws std::invalid_argument for an unknown name.
std::unique_ptr<AdversaryStrategy> make_strategy(std::string_view name,
                                                 const SamplerConfig& config,
                                                 std::uint64_t seed);
StrategyFactory strategy_factory(std::string name);
std::vector<std::string> strategy_names();

/// min{1, amp*x/true_sum_including_x}, the game's legality floor.
double minimal_legal_probability(double amp, double x, double true_sum_including_x);

struct GameRound {
  StepRecord step;
  double true_sum = 0.0;  // after the round
  double estimate = 0.0;  // after the round
};

enum class Outcome { win, lose };

struct GameTranscript {
  SamplerConfig config;
  std::vector<GameRound> rounds;
  Outcome outcome = Outcome::win;
  std::optional<std::uint64_t> first_violation_round;  // 1-based
  std::uint64_t sample_count = 0;
  double max_rel_error = 0.0;
};

/// Plays `horizon` rounds. Throws IllegalMoveError for negative or
/// non-finite items, probabilities outside (0,1] or below the legality floor,
/// and moves that push the sum past delta_cap * x1.
GameTranscript play_game(AdversaryStrategy& strategy, const SamplerConfig& config,
                         std::uint64_t horizon, std::uint64_t seed);

/// Seeds for trial i: the sampler uses derive_seed(master, i), the strategy
/// derive_seed(~master, i).
std::uint64_t sampler_seed(std::uint64_t master, std::uint64_t trial);
std::uint64_t strategy_seed(std::uint64_t master, std::uint64_t trial);

struct TrialStats {
  SamplerConfig config;
  std::string strategy;
  std::uint64_t horizon = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t master_seed = 0;
  double win_rate = 0.0;
  double max_rel_error = 0.0;
  double mean_samples = 0.0;
  std::uint64_t max_samples = 0;
  std::vector<Outcome> outcomes;
  std::vector<std::uint64_t> samples;
  std::vector<GameTranscript> transcripts;  // filled when requested
};

/// Independent games with derived seeds. Results are ordered by trial index
/// whatever `parallelism` is. An IllegalMoveError is rethrown as
/// std::runtime_error naming the trial.
TrialStats run_trials(const StrategyFactory& factory, const SamplerConfig& config,
                      std::uint64_t horizon, std::uint64_t n_trials, unsigned parallelism,
                      std::uint64_t master_seed, bool keep_transcripts = false);

/// Rounds whose played probability is below the legality floor (should be
/// empty for every transcript the referee accepted).
std::vector<std::uint64_t> referee_violations(const GameTranscript& transcript);

}  // namespace robustis
