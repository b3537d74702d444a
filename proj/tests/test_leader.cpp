#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "dsg/error.hpp"
#include "dsg/follower.hpp"
#include "dsg/leader.hpp"
#include "dsg/policy.hpp"

namespace dsg {
namespace {

std::size_t arm_of(const Distribution& d) { return point_mass_index(d); }

ArmHistory pulls(const std::vector<std::pair<std::size_t, double>>& xs) {
  ArmHistory h;
  for (auto [a, r] : xs) h.push_back({a, r});
  return h;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIoError;
}

TEST(Etc, RoundRobinThenCommit) {
  ArmHistory h;
  const std::size_t expect[] = {0, 1, 0, 1};
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(arm_of(etc_act(2, 2, h)), expect[t]);
    h.push_back({expect[t], 0.0});
  }
  EXPECT_EQ(arm_of(etc_act(1, 2, pulls({{0, 0.1}, {1, 0.9}}))), 1u);
  EXPECT_EQ(arm_of(etc_act(1, 2, pulls({{0, 0.5}, {1, 0.5}}))), 0u);
}

TEST(Etc, IgnoresRewardsAfterExploration) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 1.0);
  ArmHistory h;
  for (std::size_t t = 0; t < 30; ++t) h.push_back({t % 3, noise(rng)});
  const std::size_t committed = arm_of(etc_act(10, 3, h));
  for (int rep = 0; rep < 20; ++rep) {
    ArmHistory g = h;
    for (int k = 0; k < 15; ++k) g.push_back({static_cast<std::size_t>(k % 3), 100 * noise(rng)});
    EXPECT_EQ(arm_of(etc_act(10, 3, g)), committed);
  }
}

TEST(EtcThrowOut, FreshExplorationAfterThrowOut) {
  ArmHistory h;
  const std::size_t expect[] = {0, 1, 0, 1};
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(arm_of(etc_throwout_act(1, 1, 2, h)), expect[t]);
    h.push_back({expect[t], t < 2 ? 5.0 : 0.0});
  }
}

TEST(EtcThrowOut, ThrownDataCannotInfluenceCommit) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 1.0);
  ArmHistory tail;
  for (std::size_t t = 0; t < 8; ++t) tail.push_back({t % 2, noise(rng) + (t % 2 ? 0.5 : 0.0)});
  std::size_t expected = 99;
  for (double c : {-100.0, 0.0, 3.5, 100.0}) {
    ArmHistory h;
    for (std::size_t t = 0; t < 6; ++t) h.push_back({t % 2, c * (t % 2 ? 1 : -1)});
    h.insert(h.end(), tail.begin(), tail.end());
    const std::size_t a = arm_of(etc_throwout_act(4, 3, 2, h));
    if (expected == 99) expected = a;
    EXPECT_EQ(a, expected);
  }
  EXPECT_EQ(expected, arm_of(etc_act(4, 2, tail)));
}

TEST(ExploreThenUcb, BlockedExploration) {
  ArmHistory h;
  const std::size_t expect[] = {0, 0, 0, 1, 1, 1};
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_EQ(arm_of(explore_then_ucb_act(3, 100, 2, h)), expect[t]);
    h.push_back({expect[t], 0.3});
  }
}

TEST(ExploreThenUcb, UnpulledArmFirstAndExploreDataDiscarded) {
  // Exploration says arm 1 is great; after it only arm 0 was pulled.
  ArmHistory h = pulls({{0, -5}, {1, 5}, {0, 0.2}});
  const UcbSnapshot s = explore_then_ucb_snapshot(1, 100, 2, h, 0.1);
  EXPECT_EQ(s.count[0], 1u);
  EXPECT_EQ(s.count[1], 0u);
  EXPECT_NEAR(s.mean[0], 0.2, 1e-15);
  EXPECT_EQ(s.ucb[1], 1.0);
  EXPECT_EQ(arm_of(explore_then_ucb_act(1, 100, 2, h, 0.1)), 1u);
}

TEST(ExploreThenUcb, WidthFormula) {
  ArmHistory h;
  for (int k = 0; k < 100; ++k) h.push_back({0, 0.0});
  const UcbSnapshot s = explore_then_ucb_snapshot(1, 10000, 1, h);
  EXPECT_NEAR(s.width[0], 10 * std::sqrt(std::log(10000.0)) / std::sqrt(99.0), 1e-12);
  EXPECT_EQ(s.ucb[0], 1.0);
  ArmHistory g = pulls({{0, 0}});
  for (int k = 0; k < 100; ++k) g.push_back({0, 0.0});
  EXPECT_NEAR(explore_then_ucb_snapshot(1, 10000, 1, g).width[0], 3.0349, 1e-4);
}

TEST(LipschitzUcb, WidthFormulas) {
  EXPECT_EQ(arm_of(lipschitz_ucb_act({}, 100, 3, {})), 0u);

  LipschitzParams p;
  p.L = 2;
  p.C = std::sqrt(2.0);
  p.num_follower = 2;
  ArmHistory h(400, {0, 0.0});
  const UcbSnapshot s = lipschitz_ucb_snapshot(p, 10000, 1, h);
  EXPECT_NEAR(s.width[0], (10 * std::sqrt(2.0) + 2 * std::sqrt(2.0)) * std::sqrt(std::log(1e4)) / 20,
              1e-12);
  EXPECT_NEAR(s.width[0], 2.576, 1e-3);
  EXPECT_EQ(s.ucb[0], 1.0);

  LipschitzParams g;
  g.generalized = true;
  g.L = 1;
  g.C = 1;
  g.width = 0.0;
  g.c1 = 0.5;
  g.c3 = 0.5;
  EXPECT_NEAR(lipschitz_ucb_snapshot(g, 10000, 1, h).width[0], 0.0303, 1e-4);

  LipschitzParams zero;
  zero.L = 0;
  zero.num_follower = 3;
  EXPECT_NEAR(lipschitz_ucb_snapshot(zero, 10000, 1, h).width[0],
              10 * std::sqrt(3 * std::log(1e4) / 400), 1e-12);
}

TEST(LipschitzUcb, GeneralizedDiffersFromPlain) {
  LipschitzParams a;
  a.C = 1;
  a.L = 1;
  LipschitzParams b = a;
  b.generalized = true;
  ArmHistory h(50, {0, 0.1});
  EXPECT_NE(lipschitz_ucb_snapshot(a, 1000, 1, h).width[0],
            lipschitz_ucb_snapshot(b, 1000, 1, h).width[0]);
}

TEST(UcbSnapshots, AlwaysClamped) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.5, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    ArmHistory h;
    for (int t = 0; t < 200; ++t) h.push_back({static_cast<std::size_t>(rng() % 3), noise(rng)});
    LipschitzParams p;
    p.width = 0.01;
    p.L = 0;
    for (const auto& s : {explore_then_ucb_snapshot(2, 500, 3, h, 0.01),
                          lipschitz_ucb_snapshot(p, 500, 3, h)}) {
      for (double u : s.ucb) EXPECT_LE(u, 1.0);
    }
  }
}

LeaderHistory weak(const std::vector<std::pair<std::size_t, std::size_t>>& ab) {
  LeaderHistory h;
  for (auto [a, b] : ab) h.push_back({h.size() + 1, a, b, 0.0});
  return h;
}

TEST(ActiveArms, EmptyHistoryAndUnfinishedPhase) {
  ActiveArms act = compute_active_arms({2, 8}, false, 2, 3, {});
  EXPECT_EQ(act.active[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(act.phase[1], 0);
  act = compute_active_arms({2, 8}, false, 2, 3, weak({{0, 0}, {1, 1}, {0, 0}, {1, 2}}));
  EXPECT_EQ(act.active[0].size(), 3u);
  EXPECT_EQ(act.phase[0], 0);
}

TEST(ActiveArms, StrictTriggerAndWindow) {
  // a1 plays b2, b2 (count reaches M_1 = 2), then b2 again: count 3 > 2.
  const auto h = weak({{0, 1}, {1, 0}, {0, 1}, {0, 1}});
  const ActiveArms act = compute_active_arms({2, 8}, false, 2, 3, h);
  EXPECT_EQ(act.phase[0], 1);
  EXPECT_EQ(act.active[0], (std::vector<std::size_t>{1}));
  EXPECT_EQ(act.phase_start[0], 4u);
  EXPECT_EQ(act.phase[1], 0);
}

TEST(ActiveArms, NeedsFollowerActionsAndEnoughPhases) {
  LeaderHistory strong = {{1, 0, std::nullopt, 0.0}};
  EXPECT_EQ(code_of([&] { compute_active_arms({2}, false, 1, 1, strong); }),
            ErrorCode::kIncompatibleInfoStructure);
  const auto h = weak({{0, 0}, {0, 0}, {0, 0}, {0, 0}});
  EXPECT_EQ(code_of([&] { compute_active_arms({1}, false, 1, 1, h); }),
            ErrorCode::kScheduleExhausted);
  EXPECT_EQ(compute_active_arms({1}, true, 1, 1, h).phase[0], 1);  // M = (1, 4)
}

// The tracker sees an AAE phase end one pull late (strict > against AAE's
// equality test) and then reports exactly the arms AAE cycled through.
TEST(ActiveArms, CoSimulatedWithAae) {
  const std::vector<std::int64_t> m = {4, 16, 64, 256};
  AaeLearner aae(m, false, 1000, 3, 0.4);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 0.3);
  const double means[] = {0.9, 0.1, 0.85};
  LeaderHistory h;
  std::vector<std::size_t> played_in_phase;
  std::vector<std::vector<std::size_t>> phase_sets;
  int checked = 0;
  for (std::size_t t = 1; t <= 500; ++t) {
    const int before = aae.state().completed;
    const std::vector<std::size_t> active_before = aae.state().active;
    const std::size_t b = aae.act();
    h.push_back({t, 0, b, 0.0});
    aae.observe(b, means[b] + noise(rng));
    if (aae.state().completed > before) phase_sets.push_back(active_before);
    // One pull into a new AAE phase the tracker has caught up.
    const ActiveArms act = compute_active_arms(m, false, 1, 3, h);
    if (!phase_sets.empty() && act.phase[0] == static_cast<int>(phase_sets.size())) {
      EXPECT_EQ(act.active[0], phase_sets.back()) << "t=" << t;
      ++checked;
    }
  }
  EXPECT_GE(phase_sets.size(), 2u);
  EXPECT_LT(aae.state().active.size(), 3u);  // some elimination happened
  EXPECT_GT(checked, 0);
}

TEST(PhasedUcb, NoHistoryAndWidth) {
  EXPECT_EQ(arm_of(phased_ucb_act({2, 8}, false, 100, 3, 2, {})), 0u);
  // With a tiny width the pair means decide: (a2, b1) is best.
  LeaderHistory h;
  const double r[2][2] = {{0.2, 0.3}, {0.8, 0.1}};
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) h.push_back({h.size() + 1, a, b, r[a][b]});
  }
  EXPECT_EQ(arm_of(phased_ucb_act({5, 20}, false, 100, 2, 2, h, 1e-3)), 1u);
  EXPECT_NEAR(10 * std::sqrt(std::log(1e4) / 100), 3.0349, 1e-4);
}

TEST(Factory, RejectsBadSpecs) {
  const PolicyContext ctx{2, 2, 100};
  LeaderSpec s;
  s.kind = LeaderKind::kExploreThenCommit;
  s.E = ParamRule::fixed(60);
  EXPECT_EQ(code_of([&] { make_leader_policy(s, ctx, InfoStructure::kStrong); }),
            ErrorCode::kInvalidParam);
  s.kind = LeaderKind::kExploreThenCommitThrowOut;
  s.E = ParamRule::fixed(30);
  s.E_prime = ParamRule::fixed(30);
  EXPECT_EQ(code_of([&] { make_leader_policy(s, ctx, InfoStructure::kStrong); }),
            ErrorCode::kInvalidParam);
  s.kind = LeaderKind::kPhasedUcb;
  EXPECT_EQ(code_of([&] { make_leader_policy(s, ctx, InfoStructure::kStrong); }),
            ErrorCode::kIncompatibleInfoStructure);
  s.kind = LeaderKind::kLipschitzUcbGen;
  s.c1 = 1.0;
  EXPECT_EQ(code_of([&] { make_leader_policy(s, ctx, InfoStructure::kStrong); }),
            ErrorCode::kInvalidParam);
  s.kind = LeaderKind::kLipschitzUcb;
  s.L = -1;
  EXPECT_EQ(code_of([&] { make_leader_policy(s, ctx, InfoStructure::kStrong); }),
            ErrorCode::kInvalidParam);
}

TEST(ParamRules, Formulas) {
  const PolicyContext ctx{2, 3, 10000};
  const double lt = std::log(1e4);
  const double eta = 2.0 / 3.0;
  EXPECT_NEAR(ParamRule::scaled(ParamRule::Formula::kEtcFollower, 2).resolve(ctx),
              2 * std::pow(6.0, -eta) * std::pow(lt, 1 - eta) * std::pow(1e4, eta), 1e-9);
  EXPECT_NEAR(ParamRule::scaled(ParamRule::Formula::kEtcLeader).resolve(ctx),
              std::pow(2.0, -eta) * std::pow(lt, 1 - eta) * std::pow(1e4, eta), 1e-9);
  EXPECT_NEAR(ParamRule::scaled(ParamRule::Formula::kExploreUcb).resolve(ctx),
              std::pow(2.0, -eta) * std::pow(3 * lt, 1 - eta) * std::pow(1e4, eta), 1e-9);
  EXPECT_NEAR(ParamRule::scaled(ParamRule::Formula::kSqrtFollowers, 2).resolve(ctx),
              2 * std::sqrt(3.0), 1e-12);
  const auto e2 = ParamRule::scaled(ParamRule::Formula::kEtcFollower).resolve_count(ctx);
  EXPECT_EQ(ParamRule::scaled(ParamRule::Formula::kThrowOut).resolve_count(ctx), 3 * e2);
  EXPECT_EQ(ParamRule::fixed(0.2).resolve_count(ctx), 1);

  ParamRule d_half = ParamRule::scaled(ParamRule::Formula::kEtcLeader);
  d_half.d = 0.5;
  d_half.c = 2;
  EXPECT_NEAR(d_half.resolve(ctx),
              std::pow(2.0, -0.8) * std::pow(lt, 0.2) * std::pow(2e4, 0.8), 1e-9);
}

TEST(PhaseSchedules, ResolveAndValidate) {
  PhaseSchedule s;
  const auto m = s.resolve(10000);
  const double lt = std::log(1e4);
  ASSERT_GE(m.size(), 3u);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m[i], static_cast<std::int64_t>(std::ceil(lt * std::pow(4.0, i + 1))));
  }
  std::int64_t total = 0;
  for (auto x : m) total += x;
  EXPECT_GE(total, 10000);
  EXPECT_LT(total - m.back(), 10000);
  s.phases = 2;
  EXPECT_EQ(s.resolve(10000).size(), 2u);
  PhaseSchedule bad;
  bad.lengths = {4, 4};
  EXPECT_EQ(code_of([&] { bad.resolve(10); }), ErrorCode::kInvalidParam);
}

// Random-walk drive of an incremental leader compared against its replay form.
struct Drive {
  std::mt19937_64 rng{13};
  std::normal_distribution<double> noise{0.5, 1.0};

  template <class Pure>
  void run(const LeaderSpec& spec, const PolicyContext& ctx, InfoStructure info, Pure pure,
           std::size_t rounds) {
    auto policy = make_leader_policy(spec, ctx, info);
    LeaderHistory h;
    Distribution d;
    for (std::size_t t = 1; t <= rounds; ++t) {
      policy->act(d);
      const Distribution expect = pure(h);
      ASSERT_EQ(point_mass_index(d), point_mass_index(expect)) << "round " << t;
      const std::size_t a = point_mass_index(d);
      LeaderHistoryEntry e{t, a, std::nullopt, noise(rng) + 0.1 * a};
      if (info == InfoStructure::kWeak) e.b = rng() % ctx.num_follower;
      policy->observe(e);
      h.push_back(e);
    }
  }
};

TEST(ReplayEquivalence, AllLeaders) {
  const PolicyContext ctx{3, 2, 400};
  Drive drive;
  LeaderSpec s;
  s.width = 0.3;

  s.kind = LeaderKind::kExploreThenCommit;
  s.E = ParamRule::fixed(5);
  drive.run(s, ctx, InfoStructure::kStrong,
            [&](const LeaderHistory& h) { return etc_act(5, 3, leader_arm_history(h)); }, 60);

  s.kind = LeaderKind::kExploreThenCommitThrowOut;
  s.E_prime = ParamRule::fixed(4);
  drive.run(s, ctx, InfoStructure::kStrong,
            [&](const LeaderHistory& h) { return etc_throwout_act(5, 4, 3, leader_arm_history(h)); },
            60);

  s.kind = LeaderKind::kExploreThenUcb;
  drive.run(s, ctx, InfoStructure::kStrong,
            [&](const LeaderHistory& h) {
              return explore_then_ucb_act(5, 400, 3, leader_arm_history(h), 0.3);
            },
            300);

  for (bool gen : {false, true}) {
    s.kind = gen ? LeaderKind::kLipschitzUcbGen : LeaderKind::kLipschitzUcb;
    s.L = 1.5;
    s.C = ParamRule::fixed(0.2);
    LipschitzParams p{1.5, 0.2, 2, 0.3, gen, s.c1, s.c3};
    drive.run(s, ctx, InfoStructure::kStrong,
              [&](const LeaderHistory& h) {
                return lipschitz_ucb_act(p, 400, 3, leader_arm_history(h));
              },
              300);
  }

  s.kind = LeaderKind::kPhasedUcb;
  s.schedule.lengths = {3, 9, 27, 81, 243};
  drive.run(s, ctx, InfoStructure::kWeak,
            [&](const LeaderHistory& h) {
              return phased_ucb_act(s.schedule.lengths, false, 400, 3, 2, h, 0.3);
            },
            400);
}

TEST(ScheduleExactness, ExplorationPrefixes) {
  for (std::size_t na : {1u, 2u, 4u}) {
    for (std::int64_t E : {1, 3, 7}) {
      std::vector<std::size_t> rr(na, 0), blocked(na, 0);
      ArmHistory h, g;
      for (std::size_t t = 0; t < E * na; ++t) {
        const std::size_t a = arm_of(etc_act(E, na, h));
        EXPECT_EQ(a, t % na);
        ++rr[a];
        h.push_back({a, 0.0});
        const std::size_t b = arm_of(explore_then_ucb_act(E, 1000, na, g));
        EXPECT_EQ(b, t / E);
        ++blocked[b];
        g.push_back({b, 0.0});
      }
      for (std::size_t k = 0; k < na; ++k) {
        EXPECT_EQ(rr[k], static_cast<std::size_t>(E));
        EXPECT_EQ(blocked[k], static_cast<std::size_t>(E));
      }
    }
  }
}

}  // namespace
}  // namespace dsg
