#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsg/benchmarks.hpp"
#include "dsg/canonical.hpp"
#include "dsg/engine.hpp"
#include "dsg/policy_spec.hpp"

namespace dsg {

struct InstanceSource {
  std::string family;  // empty when `file` is used
  FamilyParams params;
  std::string file;

  bool operator==(const InstanceSource&) const = default;
};

// delta(T) = kappa * T^(-power)
struct DeltaCoupling {
  double kappa = 1.0;
  double power = 1.0 / 3.0;

  double delta(std::int64_t T) const;
  bool operator==(const DeltaCoupling&) const = default;
};

struct BenchmarkSelection {
  BenchmarkKind kind = BenchmarkKind::kGammaTolerant;
  BenchmarkParams params;

  std::string name() const { return to_string(kind); }
  bool operator==(const BenchmarkSelection&) const = default;
};

struct ExperimentConfig {
  InstanceSource instance;
  std::optional<DeltaCoupling> delta_coupling;
  LeaderSpec leader;
  FollowerSpec follower;
  GameConfig game;
  std::vector<BenchmarkSelection> benchmarks;
  std::vector<std::int64_t> horizons;  // sweep grid
  bool write_traces = true;
  bool sampled_regret = false;

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// JSON text forms. Parse errors carry line and column.
ExperimentConfig config_from_string(const std::string& text);
std::string config_to_string(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

// Leader/follower specs alone, for callers building configs in code.
LeaderSpec leader_spec_from_string(const std::string& text);
FollowerSpec follower_spec_from_string(const std::string& text);

}  // namespace dsg
