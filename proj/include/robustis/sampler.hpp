#pragma once

// Online importance sampling of a stream of non-negative reals.
//
// Each arriving item x is kept with probability p >= min{1, a*x/(x + S~)},
// where S~ is the current estimate, and is then represented by x/p. The
// estimate after every item is the sum of the representatives.

#include <cstdint>
#include <optional>

#include "robustis/rng.hpp"

namespace robustis {

/// Smallest sampling probability the sampler will use; x/p stays finite.
inline constexpr double kMinProbability = 0x1.0p-60;

/// Relative slack used when checking the delta_cap contract in floating point.
inline constexpr double kDeltaSlack = 1e-12;

/// max(1, c * eps^-2 * ln(max(e, ln delta_cap) / (eps * delta))).
/// Throws DomainError outside eps, delta in (0,1), delta_cap > 1, c > 0.
double amplification_param(double epsilon, double delta, double delta_cap, double const_c = 3.0);

struct SamplerConfig {
  double epsilon = 0.1;
  double delta = 0.1;
  double delta_cap = 2.0;
  double amp = 1.0;
  double const_c = 3.0;

  /// Config with `amp` computed by amplification_param.
  static SamplerConfig from_params(double epsilon, double delta, double delta_cap,
                                   double const_c = 3.0);

  /// Same config with an explicitly chosen amplification parameter.
  SamplerConfig with_amp(double amp_override) const;

  void validate() const;
};

struct SamplerState {
  std::uint64_t t = 0;
  double true_sum = 0.0;
  double estimate = 0.0;
  std::uint64_t sample_count = 0;
  std::optional<double> x1;  // first nonzero item
};

struct StepRecord {
  double x = 0.0;
  double p = 1.0;
  bool coin = false;
  double x_tilde = 0.0;
};

/// min{1, amp*x/(x + estimate_before)}; 1 for x == 0.
double default_probability(double amp, double x, double estimate_before);

/// Processes one item. Without an override the default rule is used; an
/// override is trusted to dominate the rule (the game referee checks its own
/// constraint). Zero items are no-ops recorded with p = 1 and no coin.
///
/// Throws DomainError for x < 0, an override outside (0,1], or a required
/// probability below kMinProbability; DeltaContractError when
/// (true_sum + x)/x1 would exceed delta_cap. The state is untouched on error.
StepRecord step(SamplerState& state, const SamplerConfig& config, double x,
                std::optional<double> p_override, Rng& rng);

double estimate(const SamplerState& state);

/// |estimate - true_sum| / true_sum; DomainError when true_sum == 0.
double relative_error(const SamplerState& state);
double relative_error(double estimate, double true_sum);

/// E[x~] over the two coin outcomes: p*(x/p) + (1-p)*0.
double expected_representative(const StepRecord& record);

/// Var[x~] = x^2/p - x^2.
double representative_variance(const StepRecord& record);

/// True when Var[x~] <= (x/amp) * denominator, the per-step bound that holds
/// whenever p >= min{1, amp*x/denominator}. Relative tolerance 1e-12.
bool variance_within_bound(const StepRecord& record, double amp, double denominator);

/// A config, a state and a private generator bundled for one stream.
class OnlineSampler {
 public:
  OnlineSampler(SamplerConfig config, std::uint64_t seed);

  StepRecord push(double x, std::optional<double> p_override = std::nullopt) {
    return step(state_, config_, x, p_override, rng_);
  }

  double estimate() const { return state_.estimate; }
  const SamplerState& state() const { return state_; }
  const SamplerConfig& config() const { return config_; }

 private:
  SamplerConfig config_;
  SamplerState state_;
  Rng rng_;
};

}  // namespace robustis
