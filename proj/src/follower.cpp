#include "dsg/follower.hpp"

#include <algorithm>
#include <cmath>

#include "dsg/error.hpp"

namespace dsg {

namespace {

std::int64_t schedule_at(std::vector<std::int64_t>& m, bool auto_extend, int i) {
  if (i < 1) throw Error(ErrorCode::kInvalidParam, "phase index starts at 1");
  const auto idx = static_cast<std::size_t>(i - 1);
  if (idx >= m.size()) {
    if (!auto_extend || m.empty()) {
      throw Error(ErrorCode::kScheduleExhausted,
                  "phase " + std::to_string(i) + " of " + std::to_string(m.size()));
    }
    while (m.size() <= idx) m.push_back(4 * m.back());
  }
  return m[idx];
}

// Keeps arms whose phase mean is within the threshold of the best one.
std::vector<std::size_t> eliminate(const std::vector<std::size_t>& active,
                                   const std::vector<double>& mean, double threshold) {
  double best = mean[active.front()];
  for (std::size_t b : active) best = std::max(best, mean[b]);
  std::vector<std::size_t> keep;
  for (std::size_t b : active) {
    if (mean[b] + threshold >= best) keep.push_back(b);
  }
  return keep;
}

}  // namespace

std::size_t ucb_base_act(std::int64_t T, std::size_t num_arms, const ArmHistory& h,
                         double width) {
  std::vector<double> sum(num_arms, 0.0);
  std::vector<std::size_t> n(num_arms, 0);
  for (const auto& o : h) {
    if (o.arm >= num_arms) throw Error(ErrorCode::kUnknownAction, "arm in history");
    sum[o.arm] += o.reward;
    ++n[o.arm];
  }
  for (std::size_t k = 0; k < num_arms; ++k) {
    if (n[k] == 0) return k;
  }
  const double lt = std::log(static_cast<double>(T));
  std::size_t best = 0;
  double best_ucb = -1.0;
  for (std::size_t k = 0; k < num_arms; ++k) {
    const double cnt = static_cast<double>(n[k]);
    const double ucb = std::min(1.0, sum[k] / cnt + width * std::sqrt(lt / cnt));
    if (ucb > best_ucb) {
      best_ucb = ucb;
      best = k;
    }
  }
  return best;
}

AaeState aae_replay(const std::vector<std::int64_t>& schedule, bool auto_extend,
                    std::int64_t T, std::size_t num_arms, const ArmHistory& h, double width) {
  std::vector<std::int64_t> m = schedule;
  const double root_log = std::sqrt(std::log(static_cast<double>(T)));
  AaeState st;
  for (std::size_t b = 0; b < num_arms; ++b) st.active.push_back(b);
  for (std::size_t pos = 0; pos < h.size(); ++pos) {
    const std::int64_t target = schedule_at(m, auto_extend, st.completed + 1);
    // Recount the current phase window [t', pos] from scratch.
    std::vector<std::int64_t> n(num_arms, 0);
    std::vector<double> sum(num_arms, 0.0);
    for (std::size_t q = st.phase_start; q <= pos; ++q) {
      if (h[q].arm >= num_arms) throw Error(ErrorCode::kUnknownAction, "arm in history");
      ++n[h[q].arm];
      sum[h[q].arm] += h[q].reward;
    }
    const bool done = std::all_of(st.active.begin(), st.active.end(),
                                  [&](std::size_t b) { return n[b] == target; });
    if (!done) continue;
    std::vector<double> mean(num_arms, 0.0);
    for (std::size_t b : st.active) mean[b] = sum[b] / static_cast<double>(n[b]);
    st.active = eliminate(st.active, mean,
                          width * root_log / std::sqrt(static_cast<double>(target)));
    ++st.completed;
    st.phase_start = pos + 1;
  }
  st.count.assign(num_arms, 0);
  st.sum.assign(num_arms, 0.0);
  for (std::size_t q = st.phase_start; q < h.size(); ++q) {
    ++st.count[h[q].arm];
    st.sum[h[q].arm] += h[q].reward;
  }
  return st;
}

std::size_t aae_base_act(const std::vector<std::int64_t>& schedule, bool auto_extend,
                         std::int64_t T, std::size_t num_arms, const ArmHistory& h,
                         double width) {
  const AaeState st = aae_replay(schedule, auto_extend, T, num_arms, h, width);
  return st.active[(h.size() - st.phase_start) % st.active.size()];
}

AaeLearner::AaeLearner(std::vector<std::int64_t> schedule, bool auto_extend, std::int64_t T,
                       std::size_t num_arms, double width)
    : schedule_(std::move(schedule)),
      auto_extend_(auto_extend),
      log_t_(std::log(static_cast<double>(T))),
      width_(width) {
  if (schedule_.empty()) throw Error(ErrorCode::kInvalidParam, "empty phase schedule");
  for (std::size_t b = 0; b < num_arms; ++b) st_.active.push_back(b);
  st_.count.assign(num_arms, 0);
  st_.sum.assign(num_arms, 0.0);
}

std::int64_t AaeLearner::phase_length(int i) { return schedule_at(schedule_, auto_extend_, i); }

std::size_t AaeLearner::act() const {
  return st_.active[(pulls_ - st_.phase_start) % st_.active.size()];
}

void AaeLearner::observe(std::size_t arm, double reward) {
  const std::int64_t target = phase_length(st_.completed + 1);
  if (arm >= st_.count.size()) throw Error(ErrorCode::kUnknownAction, "arm in history");
  ++st_.count[arm];
  st_.sum[arm] += reward;
  ++pulls_;
  for (std::size_t b : st_.active) {
    if (static_cast<std::int64_t>(st_.count[b]) != target) return;
  }
  std::vector<double> mean(st_.count.size(), 0.0);
  for (std::size_t b : st_.active) mean[b] = st_.sum[b] / static_cast<double>(st_.count[b]);
  st_.active = eliminate(st_.active, mean,
                         width_ * std::sqrt(log_t_) / std::sqrt(static_cast<double>(target)));
  ++st_.completed;
  st_.phase_start = pulls_;
  std::fill(st_.count.begin(), st_.count.end(), 0);
  std::fill(st_.sum.begin(), st_.sum.end(), 0.0);
}

}  // namespace dsg
