#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dsg/engine.hpp"
#include "dsg/instance.hpp"

namespace dsg {

// beta * n - sum_{t <= n} v_player(a_t, b_t), over the first n rounds
// (all rounds when n = 0).
double pseudo_regret(const RunTrace& trace, double beta, int player, std::size_t n = 0);
// Same with sampled rewards in place of means.
double sampled_regret(const RunTrace& trace, double beta, int player, std::size_t n = 0);

// Powers of two up to T, with T appended when it is not one.
std::vector<std::int64_t> checkpoints(std::int64_t T);
std::vector<double> regret_curve(const RunTrace& trace, double beta, int player,
                                 const std::vector<std::int64_t>& at);

// A bound g(t, T, |B|) or h(t, T, |B|) with scale s = |B|^b_exp (ln T)^log_exp T^horizon_exp:
//   kPowerLaw:        t <= burn_in ? burn_in_value : s (coeff t^t_exp + offset)
//   kPiecewiseLinear: t <= burn_in ? burn_in_value t
//                                  : burn_in_value burn_in + s coeff (t - burn_in)
//   kPrefixSum:       sum_{k=1}^{floor t} inner(k)
struct BoundSpec {
  enum class Form { kPowerLaw, kPiecewiseLinear, kPrefixSum };

  Form form = Form::kPowerLaw;
  double coeff = 1.0;
  double t_exp = 0.0;
  double b_exp = 0.0;
  double log_exp = 0.0;
  double horizon_exp = 0.0;
  double offset = 0.0;
  std::int64_t burn_in = 0;
  double burn_in_value = 1.0;
  std::shared_ptr<const BoundSpec> inner;

  static BoundSpec constant(double c);
  // coeff * |B|^b_exp (ln T)^log_exp t^t_exp
  static BoundSpec power_law(double coeff, double t_exp, double b_exp, double log_exp);

  double scale(std::int64_t T, std::size_t num_arms) const;
  double operator()(double t, std::int64_t T, std::size_t num_arms) const;
  // Values at t = 0..max_t (entry 0 is 0 for prefix sums).
  std::vector<double> tabulate(std::int64_t max_t, std::int64_t T, std::size_t num_arms) const;
};

// Prefix sum of g, in closed form where one is available.
BoundSpec instantaneous_to_anytime(const BoundSpec& g);

struct ViolationReport {
  std::size_t count = 0;
  std::size_t rounds = 0;
  double rate() const { return rounds == 0 ? 0.0 : static_cast<double>(count) / rounds; }
};

// Rounds with v2(a_t,b_t) < max_b v2(a_t,b) - g(n_{a_t}(t+1), T, |B|).
ViolationReport instantaneous_violations(const RunTrace& trace, const Instance& inst,
                                         const BoundSpec& g);
// Rounds where the cumulative suboptimality on a_t exceeds h(n_{a_t}(t+1), T, |B|).
// Other arms are unchanged in that round, so checking a_t covers every (t, a).
ViolationReport anytime_violations(const RunTrace& trace, const Instance& inst,
                                   const BoundSpec& h);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square in log space
  double stderr_slope = 0.0;
  std::size_t used = 0;
  std::vector<std::string> warnings;
};

// OLS of ln R on ln T; non-positive R are dropped with a warning.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points);

struct MeanStderr {
  double mean = 0.0;
  double stderr_mean = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace dsg
