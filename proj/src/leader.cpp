#include "dsg/leader.hpp"

#include <cmath>
#include <limits>

#include "dsg/error.hpp"

namespace dsg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_arm(std::size_t arm, std::size_t num_arms) {
  if (arm >= num_arms) {
    throw Error(ErrorCode::kUnknownAction, "arm " + std::to_string(arm) + " in history");
  }
}

// Empirical means of h[begin, end); EmptyHistoryArm if an arm has no sample.
std::size_t best_empirical_arm(std::size_t num_arms, const ArmHistory& h, std::size_t begin,
                               std::size_t end) {
  std::vector<double> sum(num_arms, 0.0);
  std::vector<std::size_t> n(num_arms, 0);
  for (std::size_t i = begin; i < end; ++i) {
    check_arm(h[i].arm, num_arms);
    sum[h[i].arm] += h[i].reward;
    ++n[h[i].arm];
  }
  std::vector<double> mean(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) {
    if (n[k] == 0) {
      throw Error(ErrorCode::kEmptyHistoryArm, "arm " + std::to_string(k) + " never explored");
    }
    mean[k] = sum[k] / static_cast<double>(n[k]);
  }
  return argmax_lowest(mean);
}

std::size_t etc_arm(std::int64_t E, std::size_t num_arms, const ArmHistory& h,
                    std::size_t offset) {
  const std::size_t t = h.size() - offset;
  const std::size_t explore = static_cast<std::size_t>(E) * num_arms;
  if (t < explore) return t % num_arms;
  return best_empirical_arm(num_arms, h, offset, offset + explore);
}

void check_positive(std::int64_t v, const char* name) {
  if (v < 1) throw Error(ErrorCode::kInvalidParam, std::string(name) + " must be >= 1");
}

// Per-arm sample statistics for UCB snapshots.
UcbSnapshot tally(std::size_t num_arms, const ArmHistory& h, std::size_t begin) {
  UcbSnapshot s;
  s.mean.assign(num_arms, 0.0);
  s.count.assign(num_arms, 0);
  for (std::size_t i = begin; i < h.size(); ++i) {
    check_arm(h[i].arm, num_arms);
    s.mean[h[i].arm] += h[i].reward;
    ++s.count[h[i].arm];
  }
  s.width.assign(num_arms, kInf);
  s.ucb.assign(num_arms, 1.0);
  for (std::size_t k = 0; k < num_arms; ++k) {
    if (s.count[k] > 0) s.mean[k] /= static_cast<double>(s.count[k]);
  }
  return s;
}

template <typename WidthFn>
void fill_ucb(UcbSnapshot& s, WidthFn width) {
  for (std::size_t k = 0; k < s.mean.size(); ++k) {
    if (s.count[k] == 0) continue;
    s.width[k] = width(static_cast<double>(s.count[k]));
    s.ucb[k] = std::min(1.0, s.mean[k] + s.width[k]);
  }
}

}  // namespace

std::size_t argmax_lowest(const std::vector<double>& xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[best]) best = i;
  }
  return best;
}

Distribution etc_act(std::int64_t E, std::size_t num_arms, const ArmHistory& h) {
  check_positive(E, "E");
  return point_mass(num_arms, etc_arm(E, num_arms, h, 0));
}

Distribution etc_throwout_act(std::int64_t E, std::int64_t E_prime, std::size_t num_arms,
                              const ArmHistory& h) {
  check_positive(E, "E");
  check_positive(E_prime, "E'");
  const std::size_t thrown = static_cast<std::size_t>(E_prime) * num_arms;
  if (h.size() < thrown) return point_mass(num_arms, h.size() % num_arms);
  return point_mass(num_arms, etc_arm(E, num_arms, h, thrown));
}

UcbSnapshot explore_then_ucb_snapshot(std::int64_t E, std::int64_t T, std::size_t num_arms,
                                      const ArmHistory& h, double width) {
  check_positive(E, "E");
  const std::size_t explore = static_cast<std::size_t>(E) * num_arms;
  UcbSnapshot s = tally(num_arms, h, std::min(explore, h.size()));
  const double root_log = std::sqrt(std::log(static_cast<double>(T)));
  fill_ucb(s, [&](double n) { return width * root_log / std::sqrt(n); });
  return s;
}

Distribution explore_then_ucb_act(std::int64_t E, std::int64_t T, std::size_t num_arms,
                                  const ArmHistory& h, double width) {
  check_positive(E, "E");
  const std::size_t t = h.size();
  if (t < static_cast<std::size_t>(E) * num_arms) {
    return point_mass(num_arms, t / static_cast<std::size_t>(E));
  }
  return point_mass(num_arms, argmax_lowest(explore_then_ucb_snapshot(E, T, num_arms, h, width).ucb));
}

UcbSnapshot lipschitz_ucb_snapshot(const LipschitzParams& p, std::int64_t T,
                                   std::size_t num_arms, const ArmHistory& h) {
  UcbSnapshot s = tally(num_arms, h, 0);
  const double lt = std::log(static_cast<double>(T));
  const double first = p.width * std::sqrt(static_cast<double>(p.num_follower) * lt);
  if (p.generalized) {
    const double second =
        p.C * p.L * std::pow(lt, p.c3) * std::pow(static_cast<double>(T), p.c1 - 1.0);
    fill_ucb(s, [&](double n) { return first / std::sqrt(n) + second; });
  } else {
    const double second = p.C * p.L * std::sqrt(lt);
    fill_ucb(s, [&](double n) { return (first + second) / std::sqrt(n); });
  }
  return s;
}

Distribution lipschitz_ucb_act(const LipschitzParams& p, std::int64_t T, std::size_t num_arms,
                               const ArmHistory& h) {
  return point_mass(num_arms, argmax_lowest(lipschitz_ucb_snapshot(p, T, num_arms, h).ucb));
}

ActiveArms compute_active_arms(const std::vector<std::int64_t>& schedule, bool auto_extend,
                               std::size_t num_leader, std::size_t num_follower,
                               const LeaderHistory& h) {
  std::vector<std::int64_t> m = schedule;
  ActiveArms out;
  std::vector<std::size_t> all(num_follower);
  for (std::size_t b = 0; b < num_follower; ++b) all[b] = b;
  out.active.assign(num_leader, all);
  out.phase.assign(num_leader, 0);
  out.phase_start.assign(num_leader, 1);

  for (std::size_t pos = 0; pos < h.size(); ++pos) {
    const auto& e = h[pos];
    if (!e.b) {
      throw Error(ErrorCode::kIncompatibleInfoStructure,
                  "active-arm tracking needs follower actions in the leader history");
    }
    const std::size_t a = e.a;
    check_arm(a, num_leader);
    check_arm(*e.b, num_follower);
    const auto s = static_cast<std::size_t>(out.phase[a]);
    if (s >= m.size()) {
      if (!auto_extend) {
        throw Error(ErrorCode::kScheduleExhausted,
                    "phase " + std::to_string(s + 1) + " needed at round " + std::to_string(e.t));
      }
      while (m.size() <= s) m.push_back(4 * m.back());
    }
    // Within-phase count of (a, b) over rounds [t'(a), t].
    std::int64_t n = 0;
    for (std::size_t q = out.phase_start[a] - 1; q <= pos; ++q) {
      if (h[q].a == a && h[q].b == e.b) ++n;
    }
    if (n > m[s]) {
      std::vector<char> seen(num_follower, 0);
      for (std::size_t q = out.phase_start[a] - 1; q < pos; ++q) {
        if (h[q].a == a) seen[*h[q].b] = 1;
      }
      out.active[a].clear();
      for (std::size_t b = 0; b < num_follower; ++b) {
        if (seen[b]) out.active[a].push_back(b);
      }
      ++out.phase[a];
      out.phase_start[a] = pos + 1;
    }
  }
  return out;
}

Distribution phased_ucb_act(const std::vector<std::int64_t>& schedule, bool auto_extend,
                            std::int64_t T, std::size_t num_leader, std::size_t num_follower,
                            const LeaderHistory& h, double width) {
  const ActiveArms act = compute_active_arms(schedule, auto_extend, num_leader, num_follower, h);
  std::vector<double> sum(num_leader * num_follower, 0.0);
  std::vector<std::size_t> n(num_leader * num_follower, 0);
  for (const auto& e : h) {
    sum[e.a * num_follower + *e.b] += e.r1;
    ++n[e.a * num_follower + *e.b];
  }
  const double lt = std::log(static_cast<double>(T));
  std::vector<double> score(num_leader, -kInf);
  for (std::size_t a = 0; a < num_leader; ++a) {
    for (std::size_t b : act.active[a]) {
      const std::size_t k = a * num_follower + b;
      double ucb = 1.0;
      if (n[k] > 0) {
        const double cnt = static_cast<double>(n[k]);
        ucb = std::min(1.0, sum[k] / cnt + width * std::sqrt(lt / cnt));
      }
      score[a] = std::max(score[a], ucb);
    }
  }
  return point_mass(num_leader, argmax_lowest(score));
}

}  // namespace dsg
