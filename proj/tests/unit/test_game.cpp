#include <gtest/gtest.h>

#include <functional>

#include "robustis/errors.hpp"
#include "robustis/game.hpp"

using namespace robustis;

namespace {

class Scripted final : public AdversaryStrategy {
 public:
  explicit Scripted(std::function<Move(const VisibleHistory&)> f) : f_(std::move(f)) {}
  std::string name() const override { return "scripted"; }
  Move next_move(const VisibleHistory& h) override { return f_(h); }

 private:
  std::function<Move(const VisibleHistory&)> f_;
};

SamplerConfig test_config() { return SamplerConfig::from_params(0.2, 0.1, 1e6); }

}  // namespace

TEST(Game, MinimalLegalProbability) {
  EXPECT_DOUBLE_EQ(minimal_legal_probability(2.0, 1.0, 10.0), 0.2);
  EXPECT_EQ(minimal_legal_probability(20.0, 1.0, 10.0), 1.0);
}

TEST(Game, RefereeRejectsProbabilityBelowFloor) {
  auto cfg = test_config().with_amp(2.0);
  Scripted s([](const VisibleHistory& h) {
    return h.round() == 1 ? Move{1.0, std::nullopt} : Move{1.0, 0.01};
  });
  try {
    play_game(s, cfg, 5, 1);
    FAIL() << "expected IllegalMoveError";
  } catch (const IllegalMoveError& e) {
    EXPECT_EQ(e.round(), 2u);
  }
}

TEST(Game, RefereeRejectsNegativeAndOutOfRange) {
  auto cfg = test_config();
  Scripted neg([](const VisibleHistory&) { return Move{-1.0, std::nullopt}; });
  EXPECT_THROW(play_game(neg, cfg, 3, 1), IllegalMoveError);
  Scripted big_p([](const VisibleHistory&) { return Move{1.0, 1.5}; });
  EXPECT_THROW(play_game(big_p, cfg, 3, 1), IllegalMoveError);
  Scripted nan([](const VisibleHistory&) { return Move{std::nan(""), std::nullopt}; });
  EXPECT_THROW(play_game(nan, cfg, 3, 1), IllegalMoveError);
}

TEST(Game, RefereeEnforcesDeltaBudget) {
  auto cfg = SamplerConfig::from_params(0.2, 0.1, 10.0);
  Scripted s([](const VisibleHistory& h) { return Move{h.round() == 1 ? 1.0 : 4.0, std::nullopt}; });
  try {
    play_game(s, cfg, 5, 1);
    FAIL() << "expected IllegalMoveError";
  } catch (const IllegalMoveError& e) {
    EXPECT_EQ(e.round(), 4u);
  }
}

TEST(Game, VisibleHistoryTracksSums) {
  auto cfg = test_config().with_amp(1.0);
  double last_true = -1.0;
  Scripted s([&](const VisibleHistory& h) {
    double sum = 0.0, est = 0.0;
    for (const auto& r : h.records) {
      sum += r.x;
      est += r.x_tilde;
    }
    EXPECT_DOUBLE_EQ(h.true_sum, sum);
    EXPECT_DOUBLE_EQ(h.estimate, est);
    last_true = h.true_sum;
    return Move{1.0, std::nullopt};
  });
  const auto tr = play_game(s, cfg, 20, 3);
  EXPECT_EQ(tr.rounds.size(), 20u);
  EXPECT_DOUBLE_EQ(last_true, 19.0);
}

TEST(Game, OutcomeReflectsFirstViolation) {
  auto cfg = test_config().with_amp(1.0);
  Scripted s([](const VisibleHistory&) { return Move{1.0, std::nullopt}; });
  bool saw_loss = false;
  for (std::uint64_t seed = 0; seed < 30 && !saw_loss; ++seed) {
    const auto tr = play_game(s, cfg, 200, seed);
    if (tr.outcome == Outcome::lose) {
      saw_loss = true;
      ASSERT_TRUE(tr.first_violation_round.has_value());
      const auto& r = tr.rounds[*tr.first_violation_round - 1];
      EXPECT_GT(relative_error(r.estimate, r.true_sum), cfg.epsilon);
      for (std::uint64_t i = 0; i + 1 < *tr.first_violation_round; ++i) {
        const auto& q = tr.rounds[i];
        EXPECT_LE(relative_error(q.estimate, q.true_sum), cfg.epsilon);
      }
    }
  }
  EXPECT_TRUE(saw_loss);
}

TEST(Game, BuiltInStrategiesPlayLegally) {
  const auto cfg = test_config();
  for (const auto& name : strategy_names()) {
    const auto stats = run_trials(strategy_factory(name), cfg, 300, 10, 1, 17, true);
    for (const auto& tr : stats.transcripts) {
      EXPECT_TRUE(referee_violations(tr).empty()) << name;
      for (const auto& r : tr.rounds) {
        if (r.step.x > 0.0) {
          EXPECT_TRUE(variance_within_bound(r.step, cfg.amp, r.true_sum)) << name;
        }
      }
    }
  }
}

TEST(Game, UnknownStrategyThrows) {
  EXPECT_THROW(make_strategy("nope", test_config(), 1), std::invalid_argument);
}

TEST(Game, TrialsIndependentOfParallelism) {
  const auto cfg = test_config();
  const auto a = run_trials(strategy_factory("error-chaser"), cfg, 200, 12, 1, 99, true);
  const auto b = run_trials(strategy_factory("error-chaser"), cfg, 200, 12, 4, 99, true);
  ASSERT_EQ(a.transcripts.size(), b.transcripts.size());
  for (std::size_t i = 0; i < a.transcripts.size(); ++i) {
    ASSERT_EQ(a.transcripts[i].rounds.size(), b.transcripts[i].rounds.size());
    for (std::size_t t = 0; t < a.transcripts[i].rounds.size(); ++t) {
      EXPECT_EQ(a.transcripts[i].rounds[t].step.x, b.transcripts[i].rounds[t].step.x);
      EXPECT_EQ(a.transcripts[i].rounds[t].step.coin, b.transcripts[i].rounds[t].step.coin);
    }
  }
  EXPECT_EQ(a.win_rate, b.win_rate);
  EXPECT_EQ(a.mean_samples, b.mean_samples);
}

TEST(Game, TrialSeedsFollowPublishedDerivation) {
  EXPECT_EQ(sampler_seed(7, 0), 7259628554680249319ULL);
  EXPECT_EQ(strategy_seed(7, 3), derive_seed(~std::uint64_t{7}, 3));
}

TEST(Game, DominantStrategyPlaysZeroWhenConstraintFails) {
  const auto cfg = test_config();
  auto strat = dominant_adaptive_strategy(cfg, CandidateRule::error_chaser);
  const auto tr = [&] {
    auto s = dominant_adaptive_strategy(cfg, CandidateRule::error_chaser);
    return play_game(*s, cfg, 400, 5);
  }();
  for (const auto& r : tr.rounds) {
    if (r.step.x == 0.0) continue;
    const double prior_est = r.estimate - r.step.x_tilde;
    const double want = std::min(2.0 * cfg.amp * r.step.x / (r.step.x + prior_est), 1.0);
    EXPECT_NEAR(r.step.p, want, 1e-9 * want);
  }
  EXPECT_EQ(strat->name(), "error-chaser");
}

TEST(Game, ZeroTrialsRejected) {
  EXPECT_THROW(run_trials(strategy_factory("ones"), test_config(), 10, 0, 1, 0), std::invalid_argument);
}
