#include "robustis/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "robustis/errors.hpp"

namespace robustis {

namespace {

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0,1), got " + std::to_string(v));
  }
}

}  // namespace

double amplification_param(double epsilon, double delta, double delta_cap, double const_c) {
  check_open_unit(epsilon, "epsilon");
  check_open_unit(delta, "delta");
  if (!(delta_cap > 1.0)) throw DomainError("delta_cap must exceed 1");
  if (!(const_c > 0.0)) throw DomainError("const_c must be positive");
  const double strata = std::max(std::numbers::e, std::log(delta_cap));
  const double a = const_c / (epsilon * epsilon) * std::log(strata / (epsilon * delta));
  return std::max(1.0, a);
}

SamplerConfig SamplerConfig::from_params(double epsilon, double delta, double delta_cap,
                                         double const_c) {
  SamplerConfig c;
  c.epsilon = epsilon;
  c.delta = delta;
  c.delta_cap = delta_cap;
  c.const_c = const_c;
  c.amp = amplification_param(epsilon, delta, delta_cap, const_c);
  return c;
}

SamplerConfig SamplerConfig::with_amp(double amp_override) const {
  SamplerConfig c = *this;
  c.amp = amp_override;
  c.validate();
  return c;
}

void SamplerConfig::validate() const {
  check_open_unit(epsilon, "epsilon");
  check_open_unit(delta, "delta");
  if (!(delta_cap > 1.0)) throw DomainError("delta_cap must exceed 1");
  if (!(amp >= 1.0) || !std::isfinite(amp)) throw DomainError("amp must be a finite value >= 1");
  if (!(const_c > 0.0)) throw DomainError("const_c must be positive");
}

double default_probability(double amp, double x, double estimate_before) {
  if (x == 0.0) return 1.0;
  return std::min(1.0, amp * x / (x + estimate_before));
}

StepRecord step(SamplerState& state, const SamplerConfig& config, double x,
                std::optional<double> p_override, Rng& rng) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("item must be a finite value >= 0");
  if (p_override && !(*p_override > 0.0 && *p_override <= 1.0)) {
    throw DomainError("probability override must lie in (0,1]");
  }

  StepRecord rec;
  rec.x = x;
  if (x == 0.0) {
    ++state.t;
    return rec;
  }

  const double x1 = state.x1.value_or(x);
  if ((state.true_sum + x) > config.delta_cap * x1 * (1.0 + kDeltaSlack)) {
    throw DeltaContractError("running sum " + std::to_string(state.true_sum + x) +
                             " exceeds delta_cap * x1 = " + std::to_string(config.delta_cap * x1));
  }

  const double p = p_override ? *p_override : default_probability(config.amp, x, state.estimate);
  if (p < kMinProbability) {
    throw DomainError("required sampling probability below 2^-60");
  }

  rec.p = p;
  rec.coin = rng.bernoulli(p);
  rec.x_tilde = rec.coin ? x / p : 0.0;

  ++state.t;
  state.true_sum += x;
  state.estimate += rec.x_tilde;
  if (rec.coin) ++state.sample_count;
  if (!state.x1) state.x1 = x;
  return rec;
}

double estimate(const SamplerState& state) { return state.estimate; }

double relative_error(double estimate, double true_sum) {
  if (true_sum == 0.0) throw DomainError("relative error undefined for a zero true sum");
  return std::abs(estimate - true_sum) / true_sum;
}

double relative_error(const SamplerState& state) {
  return relative_error(state.estimate, state.true_sum);
}

double expected_representative(const StepRecord& r) {
  if (r.x == 0.0) return 0.0;
  return r.p * (r.x / r.p) + (1.0 - r.p) * 0.0;
}

double representative_variance(const StepRecord& r) { return r.x * r.x / r.p - r.x * r.x; }

bool variance_within_bound(const StepRecord& r, double amp, double denominator) {
  if (r.x == 0.0 || r.p == 1.0) return true;
  const double var = representative_variance(r);
  const double bound = r.x / amp * denominator;
  return var <= bound * (1.0 + 1e-12);
}

OnlineSampler::OnlineSampler(SamplerConfig config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  config_.validate();
}

}  // namespace robustis
