#include "dsg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "dsg/canonical.hpp"
#include "dsg/engine.hpp"
#include "dsg/error.hpp"
#include "dsg/io.hpp"

namespace dsg {

namespace {

// Runs body(i) for i in [begin, end) on up to `jobs` threads.
template <class F>
void parallel_for(std::size_t begin, std::size_t end, unsigned jobs, F&& body) {
  const std::size_t n = end - begin;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), n));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next++) < end;) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot write " + p.string());
  return os;
}

const char* player_name(int player) { return player == 1 ? "1" : "2"; }

}  // namespace

Instance resolve_instance(const ExperimentConfig& cfg, std::int64_t T) {
  if (!cfg.instance.file.empty()) return load_instance(cfg.instance.file);
  FamilyParams p = cfg.instance.params;
  if (cfg.delta_coupling) p.delta = cfg.delta_coupling->delta(T);
  return make_canonical_instance(cfg.instance.family, p);
}

std::vector<ResolvedBenchmark> resolve_benchmarks(const Instance& inst,
                                                  const ExperimentConfig& cfg) {
  std::vector<ResolvedBenchmark> out;
  for (const auto& b : cfg.benchmarks) {
    const BenchmarkReport rep = compute_benchmark(inst, b.kind, b.params);
    out.push_back({b.name(), rep.beta1, rep.beta2});
  }
  return out;
}

double SimulationResult::mean_final(std::size_t bench, int player) const {
  std::vector<double> xs;
  xs.reserve(regret.size());
  for (std::size_t i = 0; i < regret.size(); ++i) xs.push_back(final_regret(i, bench, player));
  return mean_stderr(xs).mean;
}

SimulationResult simulate(const ExperimentConfig& cfg, std::int64_t T, unsigned jobs,
                          const RunOutput& out) {
  cfg.validate();
  const Instance inst = resolve_instance(cfg, T);
  GameConfig game = cfg.game;
  game.horizon = T;

  SimulationResult res;
  res.horizon = T;
  res.checkpoints = checkpoints(T);
  res.benchmarks = resolve_benchmarks(inst, cfg);
  res.regret.resize(game.trials);

  const bool files = !out.dir.empty();
  const bool traces = files && cfg.write_traces;
  std::ofstream trace_os;
  if (files) {
    std::filesystem::create_directories(out.dir);
    if (traces) trace_os = open_out(std::filesystem::path(out.dir) / "traces.csv");
  }

  // Trace text is produced by the workers and flushed in trial order, a
  // chunk at a time so memory stays bounded.
  const std::size_t chunk = std::max<std::size_t>(1, 2 * std::max(jobs, 1u));
  std::vector<std::string> text(chunk);
  for (std::size_t lo = 0; lo < game.trials; lo += chunk) {
    const std::size_t hi = std::min<std::size_t>(game.trials, lo + chunk);
    parallel_for(lo, hi, jobs, [&](std::size_t trial) {
      const RunTrace trace = run_game(inst, cfg.leader, cfg.follower, game, trial);
      auto& series = res.regret[trial];
      series.resize(2 * res.benchmarks.size());
      for (std::size_t b = 0; b < res.benchmarks.size(); ++b) {
        for (int player = 1; player <= 2; ++player) {
          const double beta = res.benchmarks[b].beta(player);
          auto& curve = series[SimulationResult::series(b, player)];
          if (cfg.sampled_regret) {
            curve.clear();
            for (auto n : res.checkpoints) {
              curve.push_back(sampled_regret(trace, beta, player, static_cast<std::size_t>(n)));
            }
          } else {
            curve = regret_curve(trace, beta, player, res.checkpoints);
          }
        }
      }
      if (traces) {
        std::ostringstream os;
        write_trace_csv(os, trace, inst, trial == 0, static_cast<long>(trial));
        text[trial - lo] = os.str();
      }
    });
    if (traces) {
      for (std::size_t i = lo; i < hi; ++i) {
        trace_os << text[i - lo];
        text[i - lo].clear();
      }
    }
  }

  if (files && out.summary_file) {
    auto os = open_out(std::filesystem::path(out.dir) / "summary.csv");
    os << "T,trial,player,benchmark,beta,regret\n";
    for (std::size_t trial = 0; trial < game.trials; ++trial) {
      for (std::size_t k = 0; k < res.checkpoints.size(); ++k) {
        for (int player = 1; player <= 2; ++player) {
          for (std::size_t b = 0; b < res.benchmarks.size(); ++b) {
            const auto& bm = res.benchmarks[b];
            os << res.checkpoints[k] << ',' << trial << ',' << player << ',' << bm.name << ','
               << format_double(bm.beta(player)) << ','
               << format_double(res.regret[trial][SimulationResult::series(b, player)][k])
               << '\n';
          }
        }
      }
    }
  }
  return res;
}

std::vector<std::pair<double, double>> SweepResult::max_player_points(std::size_t bench) const {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : points) {
    pts.emplace_back(static_cast<double>(p.horizon),
                     std::max(p.mean_final(bench, 1), p.mean_final(bench, 2)));
  }
  return pts;
}

const SweepFit& SweepResult::fit(const std::string& player, const std::string& benchmark) const {
  for (const auto& f : fits) {
    if (f.player == player && f.benchmark == benchmark) return f;
  }
  throw Error(ErrorCode::kInvalidParam, "no fit for player " + player + " on " + benchmark);
}

SweepResult sweep(const ExperimentConfig& cfg, unsigned jobs, const std::string& out_dir) {
  cfg.validate();
  if (cfg.horizons.empty()) throw Error(ErrorCode::kInvalidParam, "sweep needs a horizon list");
  SweepResult res;
  for (auto T : cfg.horizons) {
    res.points.push_back(simulate(cfg, T, jobs));
    const Instance inst = resolve_instance(cfg, T);
    const double threshold =
        std::cbrt(static_cast<double>(inst.num_leader() * inst.num_follower()) / T);
    for (const auto& b : cfg.benchmarks) {
      if (b.kind != BenchmarkKind::kOriginal && b.params.gamma < threshold) {
        res.warnings.push_back("gamma " + format_double(b.params.gamma) + " is below (|A||B|/T)^(1/3) = " +
                               format_double(threshold) + " at T = " + std::to_string(T));
      }
    }
  }

  const auto& names = res.points.front().benchmarks;
  for (std::size_t b = 0; b < names.size(); ++b) {
    for (const std::string player : {"1", "2", "max"}) {
      std::vector<std::pair<double, double>> pts;
      if (player == "max") {
        pts = res.max_player_points(b);
      } else {
        for (const auto& p : res.points) {
          pts.emplace_back(static_cast<double>(p.horizon), p.mean_final(b, player == "1" ? 1 : 2));
        }
      }
      SweepFit f{player, names[b].name, {}};
      try {
        f.fit = fit_exponent(pts);
      } catch (const Error& e) {
        f.fit.used = 0;
        f.fit.slope = f.fit.intercept = f.fit.residual = f.fit.stderr_slope = std::nan("");
        f.fit.warnings.push_back(e.detail());
      }
      for (const auto& w : f.fit.warnings) {
        res.warnings.push_back("fit player " + player + " " + names[b].name + ": " + w);
      }
      res.fits.push_back(std::move(f));
    }
  }

  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    auto summary = open_out(dir / "sweep_summary.csv");
    summary << "T,trial,player,benchmark,beta,regret\n";
    auto means = open_out(dir / "sweep_means.csv");
    means << "T,player,benchmark,beta,mean,stderr\n";
    for (const auto& p : res.points) {
      for (std::size_t b = 0; b < p.benchmarks.size(); ++b) {
        const auto& bm = p.benchmarks[b];
        std::vector<double> per_player[2];
        for (int player = 1; player <= 2; ++player) {
          for (std::size_t trial = 0; trial < p.regret.size(); ++trial) {
            const double r = p.final_regret(trial, b, player);
            per_player[player - 1].push_back(r);
            summary << p.horizon << ',' << trial << ',' << player << ',' << bm.name << ','
                    << format_double(bm.beta(player)) << ',' << format_double(r) << '\n';
          }
        }
        for (int player = 1; player <= 2; ++player) {
          const MeanStderr m = mean_stderr(per_player[player - 1]);
          means << p.horizon << ',' << player_name(player) << ',' << bm.name << ','
                << format_double(bm.beta(player)) << ',' << format_double(m.mean) << ','
                << format_double(m.stderr_mean) << '\n';
        }
        const int worst = p.mean_final(b, 1) >= p.mean_final(b, 2) ? 1 : 2;
        const MeanStderr m = mean_stderr(per_player[worst - 1]);
        means << p.horizon << ",max," << bm.name << ',' << format_double(bm.beta(worst)) << ','
              << format_double(m.mean) << ',' << format_double(m.stderr_mean) << '\n';
      }
    }
    auto fit = open_out(dir / "sweep_fit.csv");
    fit << "player,benchmark,slope,stderr,intercept,residual,points\n";
    for (const auto& f : res.fits) {
      fit << f.player << ',' << f.benchmark << ',' << format_double(f.fit.slope) << ','
          << format_double(f.fit.stderr_slope) << ',' << format_double(f.fit.intercept) << ','
          << format_double(f.fit.residual) << ',' << f.fit.used << '\n';
    }
  }
  return res;
}

}  // namespace dsg
