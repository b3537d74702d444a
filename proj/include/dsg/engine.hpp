#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dsg/history.hpp"
#include "dsg/instance.hpp"
#include "dsg/policy_spec.hpp"

namespace dsg {

struct GameConfig {
  std::int64_t horizon = 1;
  InfoStructure info = InfoStructure::kStrong;
  std::uint64_t base_seed = 0;
  std::size_t trials = 1;

  bool operator==(const GameConfig&) const = default;
};

using Rng = std::mt19937_64;

// Independent generators for one trial.
struct TrialStreams {
  Rng leader_policy;
  Rng follower_policy;
  Rng leader_reward;
  Rng follower_reward;
};

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);
TrialStreams make_streams(std::uint64_t base_seed, std::uint64_t trial);

double sample_reward(double mean, Rng& rng);
// Draws from a distribution; point masses consume no randomness.
std::size_t sample_action(const Distribution& d, Rng& rng);

struct RoundRecord {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct RunTrace {
  std::vector<RoundRecord> rounds;          // rounds[t-1] is round t
  std::vector<std::size_t> leader_counts;   // n_a(T+1)
  Matrix pair_counts;                       // n_{a,b}(T+1)
};

struct RunOptions {
  LeaderHistory* leader_log = nullptr;  // receives the leader's view when set
};

RunTrace run_game(const Instance& inst, const LeaderSpec& leader, const FollowerSpec& follower,
                  const GameConfig& cfg, std::uint64_t trial, const RunOptions& opts = {});

}  // namespace dsg
