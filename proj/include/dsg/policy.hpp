#pragma once

#include <memory>

#include "dsg/history.hpp"
#include "dsg/policy_spec.hpp"

namespace dsg {

// Policies keep incremental state built from the entries passed to
// observe(); act() depends only on those entries.
class LeaderPolicy {
 public:
  virtual ~LeaderPolicy() = default;
  virtual void act(Distribution& out) = 0;
  virtual void observe(const LeaderHistoryEntry& e) = 0;
};

class FollowerPolicy {
 public:
  virtual ~FollowerPolicy() = default;
  virtual void act(std::size_t a, Distribution& out) = 0;
  virtual void observe(const FollowerHistoryEntry& e) = 0;
};

std::unique_ptr<LeaderPolicy> make_leader_policy(const LeaderSpec& spec,
                                                 const PolicyContext& ctx, InfoStructure info);
std::unique_ptr<FollowerPolicy> make_follower_policy(const FollowerSpec& spec,
                                                     const PolicyContext& ctx);

}  // namespace dsg
