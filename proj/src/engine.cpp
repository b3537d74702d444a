#include "dsg/engine.hpp"

#include "dsg/error.hpp"
#include "dsg/policy.hpp"

namespace dsg {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  std::uint64_t s = base_seed;
  const std::uint64_t h = splitmix64(s);
  s = h ^ (trial * 0xd1b54a32d192ed03ULL);
  return splitmix64(s);
}

TrialStreams make_streams(std::uint64_t base_seed, std::uint64_t trial) {
  std::uint64_t s = trial_seed(base_seed, trial);
  TrialStreams out;
  out.leader_policy.seed(splitmix64(s));
  out.follower_policy.seed(splitmix64(s));
  out.leader_reward.seed(splitmix64(s));
  out.follower_reward.seed(splitmix64(s));
  return out;
}

double sample_reward(double mean, Rng& rng) {
  std::normal_distribution<double> noise(mean, 1.0);
  return noise(rng);
}

std::size_t sample_action(const Distribution& d, Rng& rng) {
  const std::size_t k = point_mass_index(d);
  if (k < d.size()) return k;
  double total = 0.0;
  for (double p : d) {
    if (!(p >= 0.0)) throw Error(ErrorCode::kInvalidParam, "negative probability");
    total += p;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kInvalidParam, "empty distribution");
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d[i];
    if (u < acc && d[i] > 0.0) return i;
  }
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] > 0.0) return i;
  }
  return 0;
}

RunTrace run_game(const Instance& inst, const LeaderSpec& leader_spec,
                  const FollowerSpec& follower_spec, const GameConfig& cfg, std::uint64_t trial,
                  const RunOptions& opts) {
  if (cfg.horizon < 1) throw Error(ErrorCode::kInvalidParam, "horizon must be >= 1");
  const PolicyContext ctx{inst.num_leader(), inst.num_follower(), cfg.horizon};
  auto leader = make_leader_policy(leader_spec, ctx, cfg.info);
  auto follower = make_follower_policy(follower_spec, ctx);
  TrialStreams rng = make_streams(cfg.base_seed, trial);

  RunTrace trace;
  trace.rounds.reserve(static_cast<std::size_t>(cfg.horizon));
  trace.leader_counts.assign(inst.num_leader(), 0);
  trace.pair_counts = Matrix(inst.num_leader(), inst.num_follower());
  Distribution d1, d2;
  const auto T = static_cast<std::size_t>(cfg.horizon);
  for (std::size_t t = 1; t <= T; ++t) {
    try {
      leader->act(d1);
      if (d1.size() != inst.num_leader()) {
        throw Error(ErrorCode::kDimensionMismatch, "leader distribution size");
      }
      const std::size_t a = sample_action(d1, rng.leader_policy);
      follower->act(a, d2);
      if (d2.size() != inst.num_follower()) {
        throw Error(ErrorCode::kDimensionMismatch, "follower distribution size");
      }
      const std::size_t b = sample_action(d2, rng.follower_policy);

      RoundRecord rec;
      rec.a = static_cast<std::uint32_t>(a);
      rec.b = static_cast<std::uint32_t>(b);
      rec.v1 = inst.v1()(a, b);
      rec.v2 = inst.v2()(a, b);
      rec.r1 = sample_reward(rec.v1, rng.leader_reward);
      rec.r2 = sample_reward(rec.v2, rng.follower_reward);
      trace.rounds.push_back(rec);
      ++trace.leader_counts[a];
      trace.pair_counts(a, b) += 1.0;

      LeaderHistoryEntry le{t, a, std::nullopt, rec.r1};
      if (cfg.info == InfoStructure::kWeak) le.b = b;
      if (opts.leader_log) opts.leader_log->push_back(le);
      leader->observe(le);
      follower->observe({t, a, b, rec.r2});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kScheduleExhausted) {
        throw Error(e.code(), e.detail() + " (round " + std::to_string(t) + ")");
      }
      throw;
    }
  }
  return trace;
}

}  // namespace dsg
