#include "dsg/policy.hpp"

#include <cmath>
#include <limits>

#include "dsg/error.hpp"
#include "dsg/follower.hpp"
#include "dsg/leader.hpp"

namespace dsg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Incremental ExploreThenCommit over a generic arm set.
class EtcCore {
 public:
  EtcCore(std::int64_t E, std::size_t num_arms)
      : explore_(static_cast<std::size_t>(E) * num_arms), sum_(num_arms, 0.0), n_(num_arms, 0) {}

  std::size_t act() const {
    if (t_ < explore_) return t_ % sum_.size();
    return committed_;
  }

  void observe(std::size_t arm, double reward) {
    if (t_ < explore_) {
      sum_[arm] += reward;
      ++n_[arm];
    }
    if (++t_ == explore_) commit();
  }

 private:
  void commit() {
    std::vector<double> mean(sum_.size());
    for (std::size_t k = 0; k < sum_.size(); ++k) {
      if (n_[k] == 0) throw Error(ErrorCode::kEmptyHistoryArm, "arm never explored");
      mean[k] = sum_[k] / static_cast<double>(n_[k]);
    }
    committed_ = argmax_lowest(mean);
  }

  std::size_t explore_;
  std::vector<double> sum_;
  std::vector<std::size_t> n_;
  std::size_t t_ = 0;
  std::size_t committed_ = 0;
};

// Running per-arm sums for UCB-style indices.
struct ArmStats {
  explicit ArmStats(std::size_t k) : sum(k, 0.0), n(k, 0) {}
  void add(std::size_t arm, double r) {
    sum[arm] += r;
    ++n[arm];
  }
  std::vector<double> sum;
  std::vector<std::size_t> n;
};

void require_fits(std::int64_t rounds, std::int64_t horizon, const char* what) {
  if (rounds > horizon) {
    throw Error(ErrorCode::kInvalidParam, std::string(what) + " exceeds the horizon: " +
                                              std::to_string(rounds) + " > " +
                                              std::to_string(horizon));
  }
}

class FixedLeader : public LeaderPolicy {
 public:
  FixedLeader(std::size_t n, std::size_t arm) : n_(n), arm_(arm) {}
  void act(Distribution& out) override { set_point_mass(out, n_, arm_); }
  void observe(const LeaderHistoryEntry&) override {}

 private:
  std::size_t n_, arm_;
};

class EtcLeader : public LeaderPolicy {
 public:
  EtcLeader(std::int64_t E, std::size_t n) : n_(n), core_(E, n) {}
  void act(Distribution& out) override { set_point_mass(out, n_, core_.act()); }
  void observe(const LeaderHistoryEntry& e) override { core_.observe(e.a, e.r1); }

 private:
  std::size_t n_;
  EtcCore core_;
};

class EtcThrowOutLeader : public LeaderPolicy {
 public:
  EtcThrowOutLeader(std::int64_t E, std::int64_t E_prime, std::size_t n)
      : n_(n), thrown_(static_cast<std::size_t>(E_prime) * n), core_(E, n) {}
  void act(Distribution& out) override {
    set_point_mass(out, n_, t_ < thrown_ ? t_ % n_ : core_.act());
  }
  void observe(const LeaderHistoryEntry& e) override {
    if (t_++ >= thrown_) core_.observe(e.a, e.r1);
  }

 private:
  std::size_t n_, thrown_;
  std::size_t t_ = 0;
  EtcCore core_;
};

class ExploreThenUcbLeader : public LeaderPolicy {
 public:
  ExploreThenUcbLeader(std::int64_t E, std::int64_t T, std::size_t n, double width)
      : n_(n),
        E_(static_cast<std::size_t>(E)),
        scale_(width * std::sqrt(std::log(static_cast<double>(T)))),
        stats_(n),
        ucb_(n) {}

  void act(Distribution& out) override {
    if (t_ < E_ * n_) {
      set_point_mass(out, n_, t_ / E_);
      return;
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const auto cnt = static_cast<double>(stats_.n[k]);
      ucb_[k] = stats_.n[k] == 0 ? 1.0
                                 : std::min(1.0, stats_.sum[k] / cnt + scale_ / std::sqrt(cnt));
    }
    set_point_mass(out, n_, argmax_lowest(ucb_));
  }

  void observe(const LeaderHistoryEntry& e) override {
    if (t_++ >= E_ * n_) stats_.add(e.a, e.r1);
  }

 private:
  std::size_t n_, E_;
  double scale_;
  std::size_t t_ = 0;
  ArmStats stats_;
  std::vector<double> ucb_;
};

class LipschitzUcbLeader : public LeaderPolicy {
 public:
  LipschitzUcbLeader(const LipschitzParams& p, std::int64_t T, std::size_t n)
      : n_(n), stats_(n), ucb_(n) {
    const double lt = std::log(static_cast<double>(T));
    const double first = p.width * std::sqrt(static_cast<double>(p.num_follower) * lt);
    if (p.generalized) {
      per_root_ = first;
      constant_ = p.C * p.L * std::pow(lt, p.c3) * std::pow(static_cast<double>(T), p.c1 - 1.0);
    } else {
      per_root_ = first + p.C * p.L * std::sqrt(lt);
    }
  }

  void act(Distribution& out) override {
    for (std::size_t k = 0; k < n_; ++k) {
      const auto cnt = static_cast<double>(stats_.n[k]);
      ucb_[k] = stats_.n[k] == 0
                    ? 1.0
                    : std::min(1.0, stats_.sum[k] / cnt + per_root_ / std::sqrt(cnt) + constant_);
    }
    set_point_mass(out, n_, argmax_lowest(ucb_));
  }

  void observe(const LeaderHistoryEntry& e) override { stats_.add(e.a, e.r1); }

 private:
  std::size_t n_;
  double per_root_ = 0.0;
  double constant_ = 0.0;
  ArmStats stats_;
  std::vector<double> ucb_;
};

class PhasedUcbLeader : public LeaderPolicy {
 public:
  PhasedUcbLeader(std::vector<std::int64_t> schedule, bool auto_extend, std::int64_t T,
                  std::size_t na, std::size_t nb, double width)
      : na_(na),
        nb_(nb),
        m_(std::move(schedule)),
        auto_extend_(auto_extend),
        log_t_(std::log(static_cast<double>(T))),
        width_(width),
        stats_(na * nb),
        active_(na, std::vector<char>(nb, 1)),
        phase_(na, 0),
        window_count_(na * nb, 0),
        window_seen_(na, std::vector<char>(nb, 0)),
        score_(na) {}

  void act(Distribution& out) override {
    for (std::size_t a = 0; a < na_; ++a) {
      double best = -kInf;
      for (std::size_t b = 0; b < nb_; ++b) {
        if (!active_[a][b]) continue;
        const std::size_t k = a * nb_ + b;
        double ucb = 1.0;
        if (stats_.n[k] > 0) {
          const auto cnt = static_cast<double>(stats_.n[k]);
          ucb = std::min(1.0, stats_.sum[k] / cnt + width_ * std::sqrt(log_t_ / cnt));
        }
        best = std::max(best, ucb);
      }
      score_[a] = best;
    }
    set_point_mass(out, na_, argmax_lowest(score_));
  }

  void observe(const LeaderHistoryEntry& e) override {
    if (!e.b) {
      throw Error(ErrorCode::kIncompatibleInfoStructure, "phased_ucb needs follower actions");
    }
    const std::size_t a = e.a;
    const std::size_t b = *e.b;
    stats_.add(a * nb_ + b, e.r1);

    // Same trigger as compute_active_arms, maintained one round at a time.
    const auto s = static_cast<std::size_t>(phase_[a]);
    if (s >= m_.size()) {
      if (!auto_extend_) {
        throw Error(ErrorCode::kScheduleExhausted,
                    "phase " + std::to_string(s + 1) + " needed at round " + std::to_string(e.t));
      }
      while (m_.size() <= s) m_.push_back(4 * m_.back());
    }
    if (static_cast<std::int64_t>(window_count_[a * nb_ + b]) + 1 > m_[s]) {
      active_[a] = window_seen_[a];
      ++phase_[a];
      std::fill(window_seen_[a].begin(), window_seen_[a].end(), 0);
      for (std::size_t q = 0; q < nb_; ++q) window_count_[a * nb_ + q] = 0;
    }
    ++window_count_[a * nb_ + b];
    window_seen_[a][b] = 1;
  }

 private:
  std::size_t na_, nb_;
  std::vector<std::int64_t> m_;
  bool auto_extend_;
  double log_t_;
  double width_;
  ArmStats stats_;
  std::vector<std::vector<char>> active_;
  std::vector<int> phase_;
  std::vector<std::size_t> window_count_;
  std::vector<std::vector<char>> window_seen_;
  std::vector<double> score_;
};

// Base learner for one leader action.
class BaseLearner {
 public:
  virtual ~BaseLearner() = default;
  virtual std::size_t act() = 0;
  virtual void observe(std::size_t arm, double reward) = 0;
};

class FixedBase : public BaseLearner {
 public:
  explicit FixedBase(std::size_t arm) : arm_(arm) {}
  std::size_t act() override { return arm_; }
  void observe(std::size_t, double) override {}

 private:
  std::size_t arm_;
};

class EtcBase : public BaseLearner {
 public:
  EtcBase(std::int64_t E, std::size_t n) : core_(E, n) {}
  std::size_t act() override { return core_.act(); }
  void observe(std::size_t arm, double reward) override { core_.observe(arm, reward); }

 private:
  EtcCore core_;
};

class UcbBase : public BaseLearner {
 public:
  UcbBase(std::int64_t T, std::size_t n, double width)
      : n_(n), log_t_(std::log(static_cast<double>(T))), width_(width), stats_(n) {}

  std::size_t act() override {
    if (unpulled_ < n_) return unpulled_;
    std::size_t best = 0;
    double best_ucb = -1.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const auto cnt = static_cast<double>(stats_.n[k]);
      const double ucb = std::min(1.0, stats_.sum[k] / cnt + width_ * std::sqrt(log_t_ / cnt));
      if (ucb > best_ucb) {
        best_ucb = ucb;
        best = k;
      }
    }
    return best;
  }

  void observe(std::size_t arm, double reward) override {
    stats_.add(arm, reward);
    while (unpulled_ < n_ && stats_.n[unpulled_] > 0) ++unpulled_;
  }

 private:
  std::size_t n_;
  double log_t_, width_;
  ArmStats stats_;
  std::size_t unpulled_ = 0;  // lowest arm index without a sample
};

class AaeBase : public BaseLearner {
 public:
  AaeBase(std::vector<std::int64_t> schedule, bool auto_extend, std::int64_t T, std::size_t n,
          double width)
      : learner_(std::move(schedule), auto_extend, T, n, width) {}
  std::size_t act() override { return learner_.act(); }
  void observe(std::size_t arm, double reward) override { learner_.observe(arm, reward); }

 private:
  AaeLearner learner_;
};

class PerArmFollower : public FollowerPolicy {
 public:
  PerArmFollower(const FollowerSpec& spec, const PolicyContext& ctx)
      : spec_(spec), ctx_(ctx), learners_(ctx.num_leader) {
    if (spec.base == FollowerBaseKind::kEtc) {
      E_ = spec.E.resolve_count(ctx);
      require_fits(E_ * static_cast<std::int64_t>(ctx.num_follower), ctx.horizon,
                   "follower explore phase");
    } else if (spec.base == FollowerBaseKind::kAae) {
      schedule_ = spec.schedule.resolve(ctx.horizon);
    } else if (spec.base == FollowerBaseKind::kFixed && spec.arm >= ctx.num_follower) {
      throw Error(ErrorCode::kInvalidParam, "fixed follower arm out of range");
    }
  }

  void act(std::size_t a, Distribution& out) override {
    set_point_mass(out, ctx_.num_follower, learner(a).act());
  }

  void observe(const FollowerHistoryEntry& e) override { learner(e.a).observe(e.b, e.r2); }

 private:
  BaseLearner& learner(std::size_t a) {
    auto& slot = learners_.at(a);
    if (!slot) slot = make();
    return *slot;
  }

  std::unique_ptr<BaseLearner> make() const {
    const std::size_t n = ctx_.num_follower;
    switch (spec_.base) {
      case FollowerBaseKind::kEtc: return std::make_unique<EtcBase>(E_, n);
      case FollowerBaseKind::kUcb: return std::make_unique<UcbBase>(ctx_.horizon, n, spec_.width);
      case FollowerBaseKind::kAae:
        return std::make_unique<AaeBase>(schedule_, spec_.schedule.auto_extend, ctx_.horizon, n,
                                         spec_.width);
      case FollowerBaseKind::kFixed: return std::make_unique<FixedBase>(spec_.arm);
    }
    throw Error(ErrorCode::kInvalidParam, "unknown follower base");
  }

  FollowerSpec spec_;
  PolicyContext ctx_;
  std::int64_t E_ = 1;
  std::vector<std::int64_t> schedule_;
  std::vector<std::unique_ptr<BaseLearner>> learners_;
};

}  // namespace

std::unique_ptr<LeaderPolicy> make_leader_policy(const LeaderSpec& spec,
                                                 const PolicyContext& ctx, InfoStructure info) {
  const std::size_t n = ctx.num_leader;
  const auto na = static_cast<std::int64_t>(n);
  switch (spec.kind) {
    case LeaderKind::kFixed:
      if (spec.arm >= n) throw Error(ErrorCode::kInvalidParam, "fixed leader arm out of range");
      return std::make_unique<FixedLeader>(n, spec.arm);
    case LeaderKind::kExploreThenCommit: {
      const std::int64_t E = spec.E.resolve_count(ctx);
      require_fits(E * na, ctx.horizon, "leader explore phase");
      return std::make_unique<EtcLeader>(E, n);
    }
    case LeaderKind::kExploreThenCommitThrowOut: {
      const std::int64_t E = spec.E.resolve_count(ctx);
      const std::int64_t Ep = spec.E_prime.resolve_count(ctx);
      require_fits((E + Ep) * na, ctx.horizon, "leader throw-out and explore phases");
      return std::make_unique<EtcThrowOutLeader>(E, Ep, n);
    }
    case LeaderKind::kExploreThenUcb: {
      const std::int64_t E = spec.E.resolve_count(ctx);
      require_fits(E * na, ctx.horizon, "leader explore phase");
      return std::make_unique<ExploreThenUcbLeader>(E, ctx.horizon, n, spec.width);
    }
    case LeaderKind::kLipschitzUcb:
    case LeaderKind::kLipschitzUcbGen: {
      LipschitzParams p;
      p.L = spec.L;
      p.C = spec.C.resolve(ctx);
      p.num_follower = ctx.num_follower;
      p.width = spec.width;
      p.generalized = spec.kind == LeaderKind::kLipschitzUcbGen;
      p.c1 = spec.c1;
      p.c3 = spec.c3;
      if (p.L < 0 || p.C < 0) throw Error(ErrorCode::kInvalidParam, "L and C must be >= 0");
      if (p.generalized && (!(p.c1 > 0 && p.c1 < 1) || !(p.c3 > 0))) {
        throw Error(ErrorCode::kInvalidParam, "need c1 in (0,1) and c3 > 0");
      }
      return std::make_unique<LipschitzUcbLeader>(p, ctx.horizon, n);
    }
    case LeaderKind::kPhasedUcb:
      if (info != InfoStructure::kWeak) {
        throw Error(ErrorCode::kIncompatibleInfoStructure, "phased_ucb requires a weak game");
      }
      return std::make_unique<PhasedUcbLeader>(spec.schedule.resolve(ctx.horizon),
                                               spec.schedule.auto_extend, ctx.horizon, n,
                                               ctx.num_follower, spec.width);
  }
  throw Error(ErrorCode::kInvalidParam, "unknown leader kind");
}

std::unique_ptr<FollowerPolicy> make_follower_policy(const FollowerSpec& spec,
                                                     const PolicyContext& ctx) {
  return std::make_unique<PerArmFollower>(spec, ctx);
}

}  // namespace dsg
