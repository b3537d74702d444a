#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsg/config.hpp"
#include "dsg/instance.hpp"
#include "dsg/metrics.hpp"

namespace dsg {

// The instance for horizon T, with delta(T) applied when coupled.
Instance resolve_instance(const ExperimentConfig& cfg, std::int64_t T);

struct ResolvedBenchmark {
  std::string name;
  double beta1 = 0.0;
  double beta2 = 0.0;

  double beta(int player) const { return player == 1 ? beta1 : beta2; }
};

std::vector<ResolvedBenchmark> resolve_benchmarks(const Instance& inst,
                                                  const ExperimentConfig& cfg);

struct RunOutput {
  std::string dir;           // empty: nothing is written
  bool summary_file = true;  // summary.csv
};

// Regret of every trial at each checkpoint, for both players and every
// benchmark. regret[trial][series(bench, player)][k].
struct SimulationResult {
  std::int64_t horizon = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<ResolvedBenchmark> benchmarks;
  std::vector<std::vector<std::vector<double>>> regret;

  static std::size_t series(std::size_t bench, int player) { return 2 * bench + (player - 1); }
  double final_regret(std::size_t trial, std::size_t bench, int player) const {
    return regret[trial][series(bench, player)].back();
  }
  // Trial means of the final regret.
  double mean_final(std::size_t bench, int player) const;
};

// Runs cfg.game.trials games at horizon T on up to `jobs` threads. Files are
// written in trial order, so the output does not depend on `jobs`.
SimulationResult simulate(const ExperimentConfig& cfg, std::int64_t T, unsigned jobs,
                          const RunOutput& out = {});

struct SweepFit {
  std::string player;  // "1", "2" or "max"
  std::string benchmark;
  FitResult fit;
};

struct SweepResult {
  std::vector<SimulationResult> points;  // one per horizon
  std::vector<SweepFit> fits;
  std::vector<std::string> warnings;

  // max(mean R1, mean R2) at each horizon.
  std::vector<std::pair<double, double>> max_player_points(std::size_t bench) const;
  const SweepFit& fit(const std::string& player, const std::string& benchmark) const;
};

SweepResult sweep(const ExperimentConfig& cfg, unsigned jobs, const std::string& out_dir = "");

}  // namespace dsg
