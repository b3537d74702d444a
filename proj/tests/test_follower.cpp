#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "dsg/canonical.hpp"
#include "dsg/engine.hpp"
#include "dsg/error.hpp"
#include "dsg/follower.hpp"
#include "dsg/leader.hpp"
#include "dsg/policy.hpp"

namespace dsg {
namespace {

TEST(UcbBase, Basics) {
  EXPECT_EQ(ucb_base_act(100, 2, {{0, 0.9}, {1, 0.1}}, 0.01), 0u);
  EXPECT_EQ(ucb_base_act(100, 2, {{0, 0.1}, {1, 0.9}}, 0.01), 1u);
  EXPECT_EQ(ucb_base_act(100, 3, {{0, 0.9}, {1, 0.1}}, 0.01), 2u);
  EXPECT_EQ(ucb_base_act(100, 3, {}, 0.01), 0u);
  // Clamped at 1: both arms tie and the lowest index wins.
  EXPECT_EQ(ucb_base_act(10000, 2, {{0, 0.1}, {1, 0.9}}), 0u);
  EXPECT_NEAR(10 * std::sqrt(std::log(1e4) / 100), 3.0349, 1e-4);
}

TEST(AaeBase, CycleArithmetic) {
  ArmHistory h;
  for (std::size_t k = 0; k < 5; ++k) h.push_back({k % 3, 0.5});
  EXPECT_EQ(aae_base_act({4, 16}, false, 1000, 3, h), 2u);
}

TEST(AaeBase, NoEliminationAtLiteralWidth) {
  ArmHistory h;
  for (int k = 0; k < 100; ++k) {
    h.push_back({0, 0.9});
    h.push_back({1, 0.1});
  }
  const AaeState s = aae_replay({100, 400}, false, 10000, 2, h);
  EXPECT_EQ(s.completed, 1);
  EXPECT_EQ(s.active.size(), 2u);
  EXPECT_NEAR(20 * std::sqrt(std::log(1e4)) / 10, 6.07, 1e-2);
  // A small width removes the worse arm.
  const AaeState t = aae_replay({100, 400}, false, 10000, 2, h, 1.0);
  EXPECT_EQ(t.active, (std::vector<std::size_t>{0}));
}

TEST(AaeBase, ScheduleExhausted) {
  ArmHistory h;
  for (int k = 0; k < 5; ++k) h.push_back({static_cast<std::size_t>(k % 2), 0.5});
  EXPECT_THROW(aae_replay({2}, false, 100, 2, h), Error);
  EXPECT_NO_THROW(aae_replay({2}, true, 100, 2, h));
  AaeLearner l({1}, false, 100, 1, 1.0);
  l.observe(0, 0.3);
  try {
    l.observe(0, 0.3);
    ADD_FAILURE() << "expected ScheduleExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScheduleExhausted);
  }
}

TEST(AaeBase, IncrementalMatchesReplay) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t nb = 2 + rng() % 4;
    std::vector<double> means(nb);
    for (auto& m : means) m = (rng() % 100) / 100.0;
    std::normal_distribution<double> noise(0.0, 0.5);
    const std::vector<std::int64_t> sched = {3, 12, 48, 192};
    const double width = 0.5 + (rng() % 10) / 10.0;
    AaeLearner l(sched, true, 2000, nb, width);
    ArmHistory h;
    std::vector<std::size_t> removed;
    for (int t = 0; t < 700; ++t) {
      const std::size_t b = l.act();
      ASSERT_EQ(b, aae_base_act(sched, true, 2000, nb, h, width)) << "rep " << rep << " t " << t;
      const double r = means[b] + noise(rng);
      const std::vector<std::size_t> before = l.state().active;
      const int phase = l.state().completed;
      l.observe(b, r);
      h.push_back({b, r});
      const AaeState rs = aae_replay(sched, true, 2000, nb, h, width);
      ASSERT_EQ(rs.active, l.state().active);
      ASSERT_EQ(rs.completed, l.state().completed);
      ASSERT_FALSE(l.state().active.empty());
      ASSERT_TRUE(std::includes(before.begin(), before.end(), l.state().active.begin(),
                                l.state().active.end()));
      for (auto k : removed) {
        ASSERT_FALSE(std::binary_search(l.state().active.begin(), l.state().active.end(), k));
      }
      if (l.state().completed > phase) {
        for (auto k : before) {
          if (!std::binary_search(l.state().active.begin(), l.state().active.end(), k)) {
            removed.push_back(k);
          }
        }
      }
    }
  }
}

// The arm with the largest mean in a completed phase is never eliminated.
TEST(AaeBase, PhaseBestSurvives) {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::vector<std::int64_t> sched = {4, 16, 64};
    AaeLearner l(sched, true, 1000, 4, 0.3);
    std::vector<double> sum(4, 0.0);
    std::vector<std::size_t> cnt(4, 0);
    int phase = 0;
    for (int t = 0; t < 300; ++t) {
      const std::size_t b = l.act();
      const double r = 0.2 * b + noise(rng);
      sum[b] += r;
      ++cnt[b];
      l.observe(b, r);
      if (l.state().completed > phase) {
        std::size_t best = 0;
        double bm = -INFINITY;
        for (std::size_t k = 0; k < 4; ++k) {
          if (cnt[k] > 0 && sum[k] / cnt[k] > bm) {
            bm = sum[k] / cnt[k];
            best = k;
          }
        }
        EXPECT_TRUE(std::binary_search(l.state().active.begin(), l.state().active.end(), best));
        phase = l.state().completed;
        std::fill(sum.begin(), sum.end(), 0.0);
        std::fill(cnt.begin(), cnt.end(), 0);
      }
    }
  }
}

FollowerSpec per_arm(FollowerBaseKind k) {
  FollowerSpec s;
  s.base = k;
  s.E = ParamRule::fixed(2);
  s.schedule.lengths = {2, 8, 32, 128};
  s.schedule.auto_extend = true;
  s.width = 0.2;
  return s;
}

TEST(PerArm, FreshLearnerOnFirstVisit) {
  auto f = make_follower_policy(per_arm(FollowerBaseKind::kEtc), {3, 2, 100});
  Distribution d;
  f->act(1, d);
  EXPECT_EQ(point_mass_index(d), 0u);
  f->observe({1, 1, 0, 0.4});
  f->act(1, d);
  EXPECT_EQ(point_mass_index(d), 1u);
  f->act(2, d);
  EXPECT_EQ(point_mass_index(d), 0u);
}

// Actions on leader arm 0 depend only on the rounds where a_t = 0.
TEST(PerArm, Isolation) {
  for (auto kind : {FollowerBaseKind::kEtc, FollowerBaseKind::kUcb, FollowerBaseKind::kAae}) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0.4, 1.0);
    std::vector<std::size_t> leader;
    std::vector<double> base_rewards;
    for (int t = 0; t < 400; ++t) {
      leader.push_back(rng() % 2);
      base_rewards.push_back(noise(rng));
    }
    std::vector<std::vector<std::size_t>> seen;
    for (int variant = 0; variant < 3; ++variant) {
      auto f = make_follower_policy(per_arm(kind), {2, 3, 1000});
      std::mt19937_64 other(100 + variant);
      std::vector<std::size_t> on_zero;
      Distribution d;
      for (std::size_t t = 0; t < leader.size(); ++t) {
        f->act(leader[t], d);
        const std::size_t b = point_mass_index(d);
        double r = base_rewards[t] + 0.1 * b;
        if (leader[t] == 0) {
          on_zero.push_back(b);
        } else {
          r = std::normal_distribution<double>(0.0, 5.0)(other);
        }
        f->observe({t + 1, leader[t], b, r});
      }
      seen.push_back(on_zero);
    }
    EXPECT_EQ(seen[0], seen[1]);
    EXPECT_EQ(seen[0], seen[2]);
  }
}

TEST(PerArm, IncrementalMatchesReplay) {
  for (auto kind : {FollowerBaseKind::kEtc, FollowerBaseKind::kUcb, FollowerBaseKind::kAae}) {
    const FollowerSpec spec = per_arm(kind);
    auto f = make_follower_policy(spec, {3, 3, 1000});
    std::mt19937_64 rng(29);
    std::normal_distribution<double> noise(0.5, 1.0);
    FollowerHistory h;
    Distribution d;
    for (std::size_t t = 1; t <= 600; ++t) {
      const std::size_t a = rng() % 3;
      f->act(a, d);
      const ArmHistory ha = per_arm_history(h, a);
      std::size_t expect = 0;
      switch (kind) {
        case FollowerBaseKind::kEtc:
          expect = point_mass_index(etc_act(2, 3, ha));
          break;
        case FollowerBaseKind::kUcb:
          expect = ucb_base_act(1000, 3, ha, spec.width);
          break;
        default:
          expect = aae_base_act(spec.schedule.lengths, true, 1000, 3, ha, spec.width);
      }
      ASSERT_EQ(point_mass_index(d), expect) << "t=" << t;
      const std::size_t b = point_mass_index(d);
      const FollowerHistoryEntry e{t, a, b, noise(rng) + 0.2 * b - 0.1 * a};
      f->observe(e);
      h.push_back(e);
    }
  }
}

TEST(PerArm, HistoryProjection) {
  FollowerHistory h = {{1, 0, 1, 0.1}, {2, 1, 0, 0.2}, {3, 0, 0, 0.3}, {4, 1, 1, 0.4}};
  const ArmHistory a0 = per_arm_history(h, 0);
  ASSERT_EQ(a0.size(), 2u);
  EXPECT_EQ(a0[0].arm, 1u);
  EXPECT_EQ(a0[1].reward, 0.3);
  EXPECT_TRUE(per_arm_history(h, 2).empty());
}

// Probability that ETC with E = 100 picks the better of two unit-variance
// arms 0.1 apart: Phi(0.1 / sqrt(2 / 100)) = 0.76025.
TEST(EtcBase, CommitProbabilityMatchesClosedForm) {
  const double p_exact = 0.5 * std::erfc(-0.1 / std::sqrt(2.0 / 100) / std::sqrt(2.0));
  EXPECT_NEAR(p_exact, 0.76025, 1e-4);
  const Instance t3 = make_canonical_instance("table3", {});
  int correct = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    TrialStreams s = make_streams(77, i);
    ArmHistory h;
    for (int t = 0; t < 200; ++t) {
      const std::size_t b = point_mass_index(etc_act(100, 2, h));
      h.push_back({b, sample_reward(t3.v2()(1, b), s.follower_reward)});
    }
    correct += point_mass_index(etc_act(100, 2, h)) == 0;
  }
  // 4 standard errors at n = 4000.
  EXPECT_NEAR(static_cast<double>(correct) / n, p_exact, 0.027);
}

}  // namespace
}  // namespace dsg
