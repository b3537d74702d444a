#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dsg/canonical.hpp"
#include "dsg/engine.hpp"
#include "dsg/error.hpp"
#include "test_util.hpp"

namespace dsg {
namespace {

LeaderSpec fixed_leader(std::size_t arm) {
  LeaderSpec s;
  s.kind = LeaderKind::kFixed;
  s.arm = arm;
  return s;
}

LeaderSpec etc_leader(std::int64_t E) {
  LeaderSpec s;
  s.kind = LeaderKind::kExploreThenCommit;
  s.E = ParamRule::fixed(static_cast<double>(E));
  return s;
}

FollowerSpec etc_follower(std::int64_t E) {
  FollowerSpec s;
  s.base = FollowerBaseKind::kEtc;
  s.E = ParamRule::fixed(static_cast<double>(E));
  return s;
}

TEST(Engine, SingleCell) {
  const Instance inst = testing::from_rows({{0.4}}, {{0.7}});
  const GameConfig cfg{50, InfoStructure::kStrong, 9, 1};
  const RunTrace tr = run_game(inst, etc_leader(3), etc_follower(3), cfg, 0);
  ASSERT_EQ(tr.rounds.size(), 50u);
  for (const auto& r : tr.rounds) {
    EXPECT_EQ(r.a, 0u);
    EXPECT_EQ(r.b, 0u);
    EXPECT_EQ(r.v1, 0.4);
    EXPECT_EQ(r.v2, 0.7);
  }
  EXPECT_EQ(tr.leader_counts, (std::vector<std::size_t>{50}));
}

TEST(Engine, RoundRobinExploration) {
  const Instance inst = make_canonical_instance("table3", {});
  const GameConfig cfg{200, InfoStructure::kStrong, 3, 1};
  const RunTrace tr = run_game(inst, etc_leader(100), etc_follower(100), cfg, 0);
  std::vector<std::size_t> per_arm(2, 0);
  for (std::size_t t = 0; t < 200; ++t) {
    const auto& r = tr.rounds[t];
    EXPECT_EQ(r.a, t % 2);
    EXPECT_EQ(r.b, per_arm[r.a]++ % 2);
  }
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(tr.pair_counts(a, b), 50.0);
  }
}

TEST(Engine, CountsAddUp) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const Instance inst = testing::random_instance(rng);
    LeaderSpec l;
    l.kind = LeaderKind::kExploreThenUcb;
    l.E = ParamRule::fixed(5);
    FollowerSpec f;
    f.base = FollowerBaseKind::kUcb;
    const GameConfig cfg{777, InfoStructure::kStrong, 11, 1};
    const RunTrace tr = run_game(inst, l, f, cfg, rep);
    std::size_t total = 0;
    for (std::size_t a = 0; a < inst.num_leader(); ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < inst.num_follower(); ++b) row += tr.pair_counts(a, b);
      EXPECT_EQ(row, static_cast<double>(tr.leader_counts[a]));
      total += tr.leader_counts[a];
    }
    EXPECT_EQ(total, 777u);
    for (const auto& r : tr.rounds) {
      EXPECT_EQ(r.v1, inst.v1()(r.a, r.b));
      EXPECT_EQ(r.v2, inst.v2()(r.a, r.b));
    }
  }
}

bool same(const RunTrace& x, const RunTrace& y) {
  if (x.rounds.size() != y.rounds.size()) return false;
  for (std::size_t t = 0; t < x.rounds.size(); ++t) {
    const auto& p = x.rounds[t];
    const auto& q = y.rounds[t];
    if (p.a != q.a || p.b != q.b || p.r1 != q.r1 || p.r2 != q.r2) return false;
  }
  return true;
}

TEST(Engine, Deterministic) {
  const Instance inst = make_canonical_instance("table2", {});
  LeaderSpec l;
  l.kind = LeaderKind::kExploreThenUcb;
  l.E = ParamRule::fixed(10);
  FollowerSpec f;
  f.base = FollowerBaseKind::kUcb;
  const GameConfig cfg{2000, InfoStructure::kStrong, 42, 4};
  EXPECT_TRUE(same(run_game(inst, l, f, cfg, 2), run_game(inst, l, f, cfg, 2)));
  EXPECT_FALSE(same(run_game(inst, l, f, cfg, 2), run_game(inst, l, f, cfg, 3)));
  GameConfig other = cfg;
  other.base_seed = 43;
  EXPECT_FALSE(same(run_game(inst, l, f, cfg, 2), run_game(inst, l, f, other, 2)));
}

TEST(Engine, TrialSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 10000; ++k) seen.insert(trial_seed(7, k));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(trial_seed(0, 0), trial_seed(1, 0));
}

// Reward noise is the same whatever the policies do: the reward streams are
// separate from the policy streams.
TEST(Engine, RewardStreamsIndependentOfPolicies) {
  const Instance inst = testing::from_rows({{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}});
  const GameConfig cfg{300, InfoStructure::kStrong, 8, 1};
  const RunTrace x = run_game(inst, fixed_leader(0), etc_follower(1), cfg, 5);
  const RunTrace y = run_game(inst, etc_leader(20), etc_follower(7), cfg, 5);
  for (std::size_t t = 0; t < 300; ++t) {
    EXPECT_EQ(x.rounds[t].r1, y.rounds[t].r1);
    EXPECT_EQ(x.rounds[t].r2, y.rounds[t].r2);
  }
}

TEST(Engine, StrongGameHidesFollowerActions) {
  const Instance inst = make_canonical_instance("table3", {});
  LeaderHistory strong, weak;
  GameConfig cfg{100, InfoStructure::kStrong, 1, 1};
  run_game(inst, etc_leader(10), etc_follower(10), cfg, 0, {&strong});
  cfg.info = InfoStructure::kWeak;
  run_game(inst, etc_leader(10), etc_follower(10), cfg, 0, {&weak});
  ASSERT_EQ(strong.size(), 100u);
  for (const auto& e : strong) EXPECT_FALSE(e.b.has_value());
  for (const auto& e : weak) EXPECT_TRUE(e.b.has_value());
  const std::string text = serialize(strong, inst);
  EXPECT_EQ(text.find("b="), std::string::npos);
  EXPECT_NE(serialize(weak, inst).find("b="), std::string::npos);
}

TEST(Engine, SampleRewardMoments) {
  Rng rng(123);
  const int n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_reward(0.3, rng);
    s += r;
    s2 += r * r;
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 0.3, 5 * 1.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n - mean * mean, 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(Engine, SampleActionFrequencies) {
  Rng rng(4);
  const Distribution d = {0.2, 0.0, 0.5, 0.3};
  std::vector<int> hits(4, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++hits[sample_action(d, rng)];
  EXPECT_EQ(hits[1], 0);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(hits[k] / static_cast<double>(n), d[k], 5 * std::sqrt(0.25 / n));
  }
  // Point masses leave the generator untouched.
  Rng a(9), b(9);
  EXPECT_EQ(sample_action(point_mass(3, 2), a), 2u);
  EXPECT_EQ(a(), b());
}

TEST(Engine, ScheduleExhaustedNamesRound) {
  const Instance inst = make_canonical_instance("table3", {});
  FollowerSpec f;
  f.base = FollowerBaseKind::kAae;
  f.schedule.lengths = {1};
  const GameConfig cfg{10, InfoStructure::kStrong, 1, 1};
  try {
    run_game(inst, fixed_leader(0), f, cfg, 0);
    FAIL() << "expected ScheduleExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScheduleExhausted);
    EXPECT_NE(std::string(e.what()).find("(round 3)"), std::string::npos) << e.what();
  }
}

TEST(Engine, RejectsBadHorizon) {
  const Instance inst = make_canonical_instance("table3", {});
  const GameConfig cfg{0, InfoStructure::kStrong, 1, 1};
  EXPECT_THROW(run_game(inst, fixed_leader(0), etc_follower(1), cfg, 0), Error);
}

}  // namespace
}  // namespace dsg
