#pragma once

#include <cstdint>
#include <vector>

#include "dsg/history.hpp"
#include "dsg/policy_spec.hpp"

namespace dsg {

// Replay forms of the per-arm base learners; `h` is the follower's history
// for one leader action.

std::size_t ucb_base_act(std::int64_t T, std::size_t num_arms, const ArmHistory& h,
                         double width = kDefaultUcbWidth);

struct AaeState {
  int completed = 0;              // s'
  std::size_t phase_start = 0;    // t', pulls completed before the current phase
  std::vector<std::size_t> active;
  std::vector<std::size_t> count;  // within-phase pulls, by arm
  std::vector<double> sum;
};

AaeState aae_replay(const std::vector<std::int64_t>& schedule, bool auto_extend,
                    std::int64_t T, std::size_t num_arms, const ArmHistory& h,
                    double width = kDefaultAaeWidth);
std::size_t aae_base_act(const std::vector<std::int64_t>& schedule, bool auto_extend,
                         std::int64_t T, std::size_t num_arms, const ArmHistory& h,
                         double width = kDefaultAaeWidth);

// Incremental ActiveArmElimination for one leader action.
class AaeLearner {
 public:
  AaeLearner(std::vector<std::int64_t> schedule, bool auto_extend, std::int64_t T,
             std::size_t num_arms, double width);

  std::size_t act() const;
  void observe(std::size_t arm, double reward);
  const AaeState& state() const { return st_; }

 private:
  std::int64_t phase_length(int i);  // M_i, 1-based

  std::vector<std::int64_t> schedule_;
  bool auto_extend_;
  double log_t_;
  double width_;
  std::size_t pulls_ = 0;
  AaeState st_;
};

}  // namespace dsg
