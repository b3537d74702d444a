#pragma once

#include <cstdint>
#include <vector>

#include "dsg/history.hpp"
#include "dsg/policy_spec.hpp"

namespace dsg {

struct UcbSnapshot {
  std::vector<double> mean;
  std::vector<double> width;  // +inf for arms without samples
  std::vector<double> ucb;    // min(1, mean + width); 1 for arms without samples
  std::vector<std::size_t> count;
};

// Replay forms of the leader algorithms: each is a pure function of the
// parameters and the full history. The engine uses the incremental policies
// from make_leader_policy, which the tests check against these.

Distribution etc_act(std::int64_t E, std::size_t num_arms, const ArmHistory& h);
Distribution etc_throwout_act(std::int64_t E, std::int64_t E_prime, std::size_t num_arms,
                              const ArmHistory& h);

UcbSnapshot explore_then_ucb_snapshot(std::int64_t E, std::int64_t T, std::size_t num_arms,
                                      const ArmHistory& h, double width = kDefaultUcbWidth);
Distribution explore_then_ucb_act(std::int64_t E, std::int64_t T, std::size_t num_arms,
                                  const ArmHistory& h, double width = kDefaultUcbWidth);

struct LipschitzParams {
  double L = 1.0;
  double C = 1.0;
  std::size_t num_follower = 1;
  double width = kDefaultUcbWidth;
  bool generalized = false;  // count-free second term (c1, c3)
  double c1 = 0.5;
  double c3 = 0.5;
};

UcbSnapshot lipschitz_ucb_snapshot(const LipschitzParams& p, std::int64_t T,
                                   std::size_t num_arms, const ArmHistory& h);
Distribution lipschitz_ucb_act(const LipschitzParams& p, std::int64_t T, std::size_t num_arms,
                               const ArmHistory& h);

struct ActiveArms {
  std::vector<std::vector<std::size_t>> active;  // B'(a)
  std::vector<int> phase;                        // s'(a)
  std::vector<std::size_t> phase_start;          // t'(a), 1-based round
};

// Replays a weak history; `schedule` is extended by 4x when auto_extend is set.
ActiveArms compute_active_arms(const std::vector<std::int64_t>& schedule, bool auto_extend,
                               std::size_t num_leader, std::size_t num_follower,
                               const LeaderHistory& h);

Distribution phased_ucb_act(const std::vector<std::int64_t>& schedule, bool auto_extend,
                            std::int64_t T, std::size_t num_leader, std::size_t num_follower,
                            const LeaderHistory& h, double width = kDefaultUcbWidth);

// Lowest index among the maxima.
std::size_t argmax_lowest(const std::vector<double>& xs);

}  // namespace dsg
