#include "dsg/metrics.hpp"

#include <cmath>

#include "dsg/error.hpp"

namespace dsg {

namespace {

std::size_t prefix_length(const RunTrace& trace, std::size_t n) {
  if (n == 0) return trace.rounds.size();
  if (n > trace.rounds.size()) throw Error(ErrorCode::kInvalidParam, "prefix beyond trace");
  return n;
}

std::vector<double> row_maxima(const Instance& inst) {
  std::vector<double> out(inst.num_leader());
  for (std::size_t a = 0; a < inst.num_leader(); ++a) {
    double m = inst.v2()(a, 0);
    for (std::size_t b = 1; b < inst.num_follower(); ++b) m = std::max(m, inst.v2()(a, b));
    out[a] = m;
  }
  return out;
}

void check_player(int player) {
  if (player != 1 && player != 2) throw Error(ErrorCode::kInvalidParam, "player must be 1 or 2");
}

}  // namespace

double pseudo_regret(const RunTrace& trace, double beta, int player, std::size_t n) {
  check_player(player);
  n = prefix_length(trace, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += player == 1 ? trace.rounds[i].v1 : trace.rounds[i].v2;
  return beta * static_cast<double>(n) - total;
}

double sampled_regret(const RunTrace& trace, double beta, int player, std::size_t n) {
  check_player(player);
  n = prefix_length(trace, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += player == 1 ? trace.rounds[i].r1 : trace.rounds[i].r2;
  return beta * static_cast<double>(n) - total;
}

std::vector<std::int64_t> checkpoints(std::int64_t T) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 1; p <= T; p *= 2) out.push_back(p);
  if (out.empty() || out.back() != T) out.push_back(T);
  return out;
}

std::vector<double> regret_curve(const RunTrace& trace, double beta, int player,
                                 const std::vector<std::int64_t>& at) {
  check_player(player);
  std::vector<double> out;
  out.reserve(at.size());
  double total = 0.0;
  std::size_t i = 0;
  for (std::int64_t n : at) {
    const auto upto = static_cast<std::size_t>(n);
    if (upto > trace.rounds.size() || upto < i) {
      throw Error(ErrorCode::kInvalidParam, "checkpoints must be increasing and within the trace");
    }
    for (; i < upto; ++i) total += player == 1 ? trace.rounds[i].v1 : trace.rounds[i].v2;
    out.push_back(beta * static_cast<double>(upto) - total);
  }
  return out;
}

BoundSpec BoundSpec::constant(double c) {
  BoundSpec b;
  b.coeff = c;
  return b;
}

BoundSpec BoundSpec::power_law(double coeff, double t_exp, double b_exp, double log_exp) {
  BoundSpec b;
  b.coeff = coeff;
  b.t_exp = t_exp;
  b.b_exp = b_exp;
  b.log_exp = log_exp;
  return b;
}

double BoundSpec::scale(std::int64_t T, std::size_t num_arms) const {
  double s = 1.0;
  if (b_exp != 0.0) s *= std::pow(static_cast<double>(num_arms), b_exp);
  if (log_exp != 0.0) s *= std::pow(std::log(static_cast<double>(T)), log_exp);
  if (horizon_exp != 0.0) s *= std::pow(static_cast<double>(T), horizon_exp);
  return s;
}

double BoundSpec::operator()(double t, std::int64_t T, std::size_t num_arms) const {
  switch (form) {
    case Form::kPowerLaw:
      if (t <= static_cast<double>(burn_in)) return burn_in_value;
      return scale(T, num_arms) * (coeff * (t_exp == 0.0 ? 1.0 : std::pow(t, t_exp)) + offset);
    case Form::kPiecewiseLinear: {
      const auto e = static_cast<double>(burn_in);
      if (t <= e) return burn_in_value * t;
      return burn_in_value * e + scale(T, num_arms) * coeff * (t - e);
    }
    case Form::kPrefixSum: {
      if (!inner) throw Error(ErrorCode::kInvalidParam, "prefix-sum bound without inner bound");
      double total = 0.0;
      const auto n = static_cast<std::int64_t>(std::floor(t));
      for (std::int64_t k = 1; k <= n; ++k) total += (*inner)(static_cast<double>(k), T, num_arms);
      return total;
    }
  }
  return 0.0;
}

std::vector<double> BoundSpec::tabulate(std::int64_t max_t, std::int64_t T,
                                        std::size_t num_arms) const {
  std::vector<double> out(static_cast<std::size_t>(max_t) + 1, 0.0);
  if (form == Form::kPrefixSum) {
    if (!inner) throw Error(ErrorCode::kInvalidParam, "prefix-sum bound without inner bound");
    double total = 0.0;
    for (std::int64_t k = 1; k <= max_t; ++k) {
      total += (*inner)(static_cast<double>(k), T, num_arms);
      out[static_cast<std::size_t>(k)] = total;
    }
    return out;
  }
  for (std::int64_t k = 0; k <= max_t; ++k) {
    out[static_cast<std::size_t>(k)] = (*this)(static_cast<double>(k), T, num_arms);
  }
  return out;
}

BoundSpec instantaneous_to_anytime(const BoundSpec& g) {
  if (g.form == BoundSpec::Form::kPowerLaw && g.offset == 0.0) {
    BoundSpec h = g;
    if (g.burn_in == 0 && g.t_exp == 0.0) {
      h.t_exp = 1.0;  // eps * t
      return h;
    }
    if (g.burn_in == 0 && g.t_exp > -1.0 && g.t_exp < 0.0) {
      // sum_{k<=t} c k^-p <= c + int_1^t c x^-p dx <= c t^(1-p) / (1-p) + c
      const double q = 1.0 + g.t_exp;
      h.coeff = g.coeff / q;
      h.t_exp = q;
      h.offset = g.coeff;
      return h;
    }
    if (g.burn_in > 0 && g.t_exp == 0.0) {
      h.form = BoundSpec::Form::kPiecewiseLinear;
      return h;
    }
  }
  BoundSpec h;
  h.form = BoundSpec::Form::kPrefixSum;
  h.inner = std::make_shared<BoundSpec>(g);
  return h;
}

ViolationReport instantaneous_violations(const RunTrace& trace, const Instance& inst,
                                         const BoundSpec& g) {
  const std::vector<double> top = row_maxima(inst);
  const auto T = static_cast<std::int64_t>(trace.rounds.size());
  const std::vector<double> bound = g.tabulate(T, T, inst.num_follower());
  std::vector<std::size_t> n(inst.num_leader(), 0);
  ViolationReport rep;
  rep.rounds = trace.rounds.size();
  for (const auto& r : trace.rounds) {
    const std::size_t k = ++n[r.a];
    if (r.v2 < top[r.a] - bound[k]) ++rep.count;
  }
  return rep;
}

ViolationReport anytime_violations(const RunTrace& trace, const Instance& inst,
                                   const BoundSpec& h) {
  const std::vector<double> top = row_maxima(inst);
  const auto T = static_cast<std::int64_t>(trace.rounds.size());
  const std::vector<double> bound = h.tabulate(T, T, inst.num_follower());
  std::vector<std::size_t> n(inst.num_leader(), 0);
  std::vector<double> loss(inst.num_leader(), 0.0);
  ViolationReport rep;
  rep.rounds = trace.rounds.size();
  for (const auto& r : trace.rounds) {
    const std::size_t k = ++n[r.a];
    loss[r.a] += top[r.a] - r.v2;
    if (loss[r.a] > bound[k]) ++rep.count;
  }
  return rep;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points) {
  FitResult fit;
  std::vector<double> xs, ys;
  for (const auto& [T, R] : points) {
    if (!(T > 0.0) || !(R > 0.0) || !std::isfinite(R)) {
      fit.warnings.push_back("dropped point T=" + std::to_string(T) +
                             " with non-positive regret " + std::to_string(R));
      continue;
    }
    xs.push_back(std::log(T));
    ys.push_back(std::log(R));
  }
  fit.used = xs.size();
  if (xs.size() < 3) {
    throw Error(ErrorCode::kNonPositiveRegret,
                "only " + std::to_string(xs.size()) + " positive points, need 3");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::kInvalidParam, "fit needs distinct horizons");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += e * e;
  }
  fit.residual = std::sqrt(sse / n);
  fit.stderr_slope = xs.size() > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return fit;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_mean = std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

}  // namespace dsg
