// Command-line driver: instances, bench, simulate, sweep.
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dsg/benchmarks.hpp"
#include "dsg/canonical.hpp"
#include "dsg/config.hpp"
#include "dsg/error.hpp"
#include "dsg/experiment.hpp"
#include "dsg/io.hpp"

namespace {

using namespace dsg;

struct BenchFlags {
  double gamma = 1.0;
  double c = 1.0;
  double d = 1.0;
  bool grid = false;
  double resolution = 1e-4;
};

void add_bench_flags(CLI::App* cmd, BenchFlags& f) {
  cmd->add_option("--gamma", f.gamma, "maximum tolerance")->capture_default_str();
  cmd->add_option("--c", f.c, "regularizer scale (generalized)")->capture_default_str();
  cmd->add_option("--d", f.d, "regularizer exponent (generalized)")->capture_default_str();
  cmd->add_flag("--grid-oracle", f.grid, "cross-check against the grid evaluation");
  cmd->add_option("--resolution", f.resolution, "grid step for --grid-oracle")
      ->capture_default_str();
}

std::string fmt(double x) { return format_double(x); }

// Prints every benchmark variant and returns them as one JSON document.
std::string print_benchmarks(const Instance& inst, const BenchFlags& f, std::ostream& os) {
  const StackelbergResult st = stackelberg(inst);
  os << "stackelberg a*=" << inst.leader_actions()[st.a_star]
     << " b*=" << inst.follower_actions()[st.b_star] << " beta1=" << fmt(st.beta1_orig)
     << " beta2=" << fmt(st.beta2_orig) << '\n';
  BenchmarkParams p;
  p.gamma = f.gamma;
  p.c = f.c;
  p.d = f.d;
  p.validate();
  std::string doc = "{\n";
  bool first = true;
  for (auto kind : {BenchmarkKind::kOriginal, BenchmarkKind::kGammaTolerant,
                    BenchmarkKind::kSelfTolerant, BenchmarkKind::kGeneralized}) {
    const BenchmarkReport rep = compute_benchmark(inst, kind, p);
    os << to_string(kind) << " beta1=" << fmt(rep.beta1) << " beta2=" << fmt(rep.beta2);
    if (kind != BenchmarkKind::kOriginal) {
      os << " eps1*=" << fmt(rep.eps1_star) << " eps2*=" << fmt(rep.eps2_star);
    }
    os << '\n';
    if (f.grid && kind != BenchmarkKind::kOriginal) {
      BenchmarkParams q = p;
      if (kind == BenchmarkKind::kGammaTolerant) q.c = q.d = 1.0;
      const BenchmarkReport g =
          grid_benchmark_oracle(inst, q, f.resolution, kind == BenchmarkKind::kSelfTolerant);
      const double diff = std::max(std::abs(g.beta1 - rep.beta1), std::abs(g.beta2 - rep.beta2));
      os << "  grid beta1=" << fmt(g.beta1) << " beta2=" << fmt(g.beta2)
         << " max_diff=" << fmt(diff) << '\n';
    }
    doc += std::string(first ? "" : ",\n") + "\"" + to_string(kind) + "\": " + report_to_string(rep);
    first = false;
  }
  os << "lipschitz L*=" << fmt(lipschitz_constant(inst)) << '\n';
  return doc + "}\n";
}

void print_warnings(const std::vector<std::string>& ws) {
  for (const auto& w : ws) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized Stackelberg bandit games"};
  app.require_subcommand(1);

  // instances
  auto* inst_cmd = app.add_subcommand("instances", "build a canonical instance");
  std::string family;
  FamilyParams fp;
  std::string inst_out;
  BenchFlags inst_bench;
  inst_cmd->add_option("family", family, "instance family")->required();
  inst_cmd->add_option("--delta", fp.delta, "gap parameter")->capture_default_str();
  inst_cmd->add_option("--x", fp.x, "misaligned_inverted x")->capture_default_str();
  inst_cmd->add_option("--y", fp.y, "misaligned_inverted y")->capture_default_str();
  inst_cmd->add_option("--leaders", fp.num_leader, "|A| for sqrt_lower/dlower")
      ->capture_default_str();
  inst_cmd->add_option("--followers", fp.num_follower, "|B| for sqrt_lower/dlower")
      ->capture_default_str();
  inst_cmd->add_option("--target-a", fp.target_a, "sqrt_lower target leader index (0-based)");
  inst_cmd->add_option("--target-b", fp.target_b, "sqrt_lower/dlower target follower index");
  inst_cmd->add_option("--out", inst_out, "instance file (default <family>.json)");
  add_bench_flags(inst_cmd, inst_bench);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "compute benchmarks for an instance file");
  std::string bench_path, bench_out;
  BenchFlags bench_flags;
  bench_cmd->add_option("instance", bench_path, "instance file")->required();
  bench_cmd->add_option("--out", bench_out, "also write the reports as JSON");
  add_bench_flags(bench_cmd, bench_flags);

  // simulate / sweep
  std::string config_path, run_out = "out";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  auto* sim_cmd = app.add_subcommand("simulate", "run independent games at one horizon");
  auto* sweep_cmd = app.add_subcommand("sweep", "run a horizon sweep and fit exponents");
  for (auto* cmd : {sim_cmd, sweep_cmd}) {
    cmd->add_option("--config", config_path, "experiment config")->required();
    cmd->add_option("--seed", seed, "base seed (overrides the config)");
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    cmd->add_option("--out", run_out, "output directory")->capture_default_str();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (inst_cmd->parsed()) {
      const Instance inst = make_canonical_instance(family, fp);
      const std::string path = inst_out.empty() ? family + ".json" : inst_out;
      save_instance(inst, path);
      std::cout << "wrote " << path << '\n';
      print_benchmarks(inst, inst_bench, std::cout);
    } else if (bench_cmd->parsed()) {
      const Instance inst = load_instance(bench_path);
      const std::string doc = print_benchmarks(inst, bench_flags, std::cout);
      if (!bench_out.empty()) write_file(bench_out, doc);
    } else {
      ExperimentConfig cfg = load_config(config_path);
      if (seed) cfg.game.base_seed = *seed;
      if (sim_cmd->parsed()) {
        const SimulationResult res = simulate(cfg, cfg.game.horizon, jobs, {run_out});
        for (std::size_t b = 0; b < res.benchmarks.size(); ++b) {
          const auto& bm = res.benchmarks[b];
          std::cout << bm.name << " beta1=" << fmt(bm.beta1) << " beta2=" << fmt(bm.beta2)
                    << " mean R1=" << fmt(res.mean_final(b, 1))
                    << " mean R2=" << fmt(res.mean_final(b, 2)) << '\n';
        }
        std::cout << "wrote " << run_out << '\n';
      } else {
        const SweepResult res = sweep(cfg, jobs, run_out);
        print_warnings(res.warnings);
        for (const auto& f : res.fits) {
          std::cout << "player " << f.player << ' ' << f.benchmark << " slope=" << fmt(f.fit.slope)
                    << " stderr=" << fmt(f.fit.stderr_slope) << " points=" << f.fit.used << '\n';
        }
        std::cout << "wrote " << run_out << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
