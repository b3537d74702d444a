#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dsg/instance.hpp"

namespace dsg {

enum class InfoStructure { kStrong, kWeak };

const char* to_string(InfoStructure info);
InfoStructure info_from_string(const std::string& s);

struct LeaderHistoryEntry {
  std::size_t t = 0;              // 1-based round
  std::size_t a = 0;
  std::optional<std::size_t> b;   // present only in a weak game
  double r1 = 0.0;
};

struct FollowerHistoryEntry {
  std::size_t t = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  double r2 = 0.0;
};

// One pull of a single-agent bandit: the arm and the observed reward.
struct ArmObservation {
  std::size_t arm = 0;
  double reward = 0.0;
};

using LeaderHistory = std::vector<LeaderHistoryEntry>;
using FollowerHistory = std::vector<FollowerHistoryEntry>;
using ArmHistory = std::vector<ArmObservation>;

// Leader actions and rewards only.
ArmHistory leader_arm_history(const LeaderHistory& h);
// Rounds with a_t = a, re-indexed by pull count.
ArmHistory per_arm_history(const FollowerHistory& h, std::size_t a);

// Text form used by the hygiene checks, e.g. "t=3 a=a2 r1=0.41".
std::string serialize(const LeaderHistory& h, const Instance& inst);

using Distribution = std::vector<double>;

void set_point_mass(Distribution& out, std::size_t n, std::size_t k);
Distribution point_mass(std::size_t n, std::size_t k);
// Index of the unique unit entry, or n when out is not a point mass.
std::size_t point_mass_index(const Distribution& d);

}  // namespace dsg
