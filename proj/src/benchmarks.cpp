#include "dsg/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsg/error.hpp"

namespace dsg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything the relaxed utilities need at one eps.
struct RelaxedSets {
  std::vector<std::vector<std::size_t>> br;  // B_eps(a)
  std::vector<double> lower;                 // min_{b in B_eps(a)} v1(a,b)
  std::vector<double> upper;                 // max_{b in B_eps(a)} v1(a,b)
  double w = -kInf;                          // max_a lower(a)
  std::vector<std::size_t> leaders;          // A_eps
};

RelaxedSets relaxed_sets(const Instance& inst, double eps, double tol) {
  RelaxedSets s;
  const std::size_t na = inst.num_leader();
  s.br.resize(na);
  s.lower.assign(na, kInf);
  s.upper.assign(na, -kInf);
  for (std::size_t a = 0; a < na; ++a) {
    s.br[a] = eps_best_response_set(inst, a, eps, tol);
    for (std::size_t b : s.br[a]) {
      s.lower[a] = std::min(s.lower[a], inst.v1()(a, b));
      s.upper[a] = std::max(s.upper[a], inst.v1()(a, b));
    }
    s.w = std::max(s.w, s.lower[a]);
  }
  for (std::size_t a = 0; a < na; ++a) {
    if (s.upper[a] >= s.w - eps - tol) s.leaders.push_back(a);
  }
  return s;
}

double row_max(const Matrix& m, std::size_t r) {
  double best = -kInf;
  for (std::size_t c = 0; c < m.cols; ++c) best = std::max(best, m(r, c));
  return best;
}

// Relaxed utilities (without regularizer) for both players.
std::pair<double, double> gamma_tolerant_values(const Instance& inst, const RelaxedSets& s) {
  double follower = kInf;
  for (std::size_t a : s.leaders) follower = std::min(follower, row_max(inst.v2(), a));
  return {s.w, follower};
}

std::pair<double, double> self_tolerant_values(const Instance& inst, const RelaxedSets& s) {
  double v1 = kInf;
  double v2 = kInf;
  for (std::size_t a : s.leaders) {
    for (std::size_t b : s.br[a]) {
      v1 = std::min(v1, inst.v1()(a, b));
      v2 = std::min(v2, inst.v2()(a, b));
    }
  }
  return {v1, v2};
}

void sort_dedupe(std::vector<double>& xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x > out.back() + tol) out.push_back(x);
  }
  xs.swap(out);
}

// Gaps max_b' v2(a,b') - v2(a,b) in (0, gamma].
std::vector<double> follower_gaps(const Instance& inst, double gamma, double tol) {
  std::vector<double> out;
  for (std::size_t a = 0; a < inst.num_leader(); ++a) {
    const double top = row_max(inst.v2(), a);
    for (std::size_t b = 0; b < inst.num_follower(); ++b) {
      const double g = top - inst.v2()(a, b);
      if (g > tol && g <= gamma + tol) out.push_back(std::min(g, gamma));
    }
  }
  return out;
}

template <typename ValueFn>
BenchmarkReport minimize(const Instance& inst, const BenchmarkParams& p,
                         std::vector<double> candidates, ValueFn values) {
  BenchmarkReport rep;
  rep.beta1 = kInf;
  rep.beta2 = kInf;
  for (double eps : candidates) {
    const RelaxedSets s = relaxed_sets(inst, eps, p.tol);
    const auto [u1, u2] = values(inst, s);
    const double reg = p.regularizer(eps);
    if (u1 + reg < rep.beta1 - p.tol) {
      rep.beta1 = u1 + reg;
      rep.eps1_star = eps;
    }
    if (u2 + reg < rep.beta2 - p.tol) {
      rep.beta2 = u2 + reg;
      rep.eps2_star = eps;
    }
  }
  rep.breakpoints = std::move(candidates);
  return rep;
}

}  // namespace

void BenchmarkParams::validate() const {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw Error(ErrorCode::kInvalidParam, "gamma must lie in (0,1]");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::kInvalidParam, "c must be >= 0");
  if (!(d > 0.0) || d > 1.0) throw Error(ErrorCode::kInvalidParam, "d must lie in (0,1]");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidParam, "tol must be >= 0");
}

double BenchmarkParams::regularizer(double eps) const {
  if (c == 1.0 && d == 1.0) return eps;
  return c * std::pow(eps, d);
}

const char* to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kOriginal: return "orig";
    case BenchmarkKind::kGammaTolerant: return "gamma_tolerant";
    case BenchmarkKind::kSelfTolerant: return "self_tolerant";
    case BenchmarkKind::kGeneralized: return "generalized";
  }
  return "unknown";
}

BenchmarkKind benchmark_kind_from_string(const std::string& s) {
  for (auto k : {BenchmarkKind::kOriginal, BenchmarkKind::kGammaTolerant,
                 BenchmarkKind::kSelfTolerant, BenchmarkKind::kGeneralized}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::kInvalidParam, "unknown benchmark kind '" + s + "'");
}

std::vector<double> benchmark_breakpoints(const Instance& inst, double gamma, double tol) {
  std::vector<double> pts = follower_gaps(inst, gamma, tol);
  pts.push_back(0.0);
  pts.push_back(gamma);
  sort_dedupe(pts, tol);

  // Between consecutive follower breakpoints every B_eps(a) is fixed, so W and
  // U(a) are fixed and a joins A_eps exactly at eps = W - U(a).
  std::vector<double> extra;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k];
    const double hi = pts[k + 1];
    const RelaxedSets s = relaxed_sets(inst, lo, tol);
    for (std::size_t a = 0; a < inst.num_leader(); ++a) {
      const double cand = s.w - s.upper[a];
      if (cand > lo + tol && cand < hi - tol) extra.push_back(cand);
    }
  }
  pts.insert(pts.end(), extra.begin(), extra.end());
  sort_dedupe(pts, tol);
  return pts;
}

BenchmarkReport benchmark_gamma_tolerant(const Instance& inst, const BenchmarkParams& p) {
  p.validate();
  return minimize(inst, p, benchmark_breakpoints(inst, p.gamma, p.tol), gamma_tolerant_values);
}

BenchmarkReport benchmark_self_tolerant(const Instance& inst, const BenchmarkParams& p) {
  p.validate();
  return minimize(inst, p, benchmark_breakpoints(inst, p.gamma, p.tol), self_tolerant_values);
}

BenchmarkReport grid_benchmark_oracle(const Instance& inst, const BenchmarkParams& p,
                                      double resolution, bool self_tolerant) {
  p.validate();
  if (!(resolution > 0.0)) throw Error(ErrorCode::kInvalidParam, "resolution must be > 0");
  const std::size_t na = inst.num_leader();
  const std::size_t nb = inst.num_follower();

  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor(p.gamma / resolution + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) grid.push_back(std::min(p.gamma, k * resolution));
  grid.push_back(p.gamma);
  for (std::size_t a = 0; a < na; ++a) {
    double top = -kInf;
    for (std::size_t b = 0; b < nb; ++b) top = std::max(top, inst.v2()(a, b));
    for (std::size_t b = 0; b < nb; ++b) {
      const double g = top - inst.v2()(a, b);
      if (g > 0.0 && g <= p.gamma) grid.push_back(g);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  BenchmarkReport rep;
  rep.beta1 = kInf;
  rep.beta2 = kInf;
  std::vector<std::vector<char>> in_br(na, std::vector<char>(nb));
  for (double eps : grid) {
    // Direct construction of B_eps(a) and A_eps.
    double w = -kInf;
    std::vector<double> hi(na, -kInf);
    for (std::size_t a = 0; a < na; ++a) {
      double top = -kInf;
      for (std::size_t b = 0; b < nb; ++b) top = std::max(top, inst.v2()(a, b));
      double lo = kInf;
      for (std::size_t b = 0; b < nb; ++b) {
        in_br[a][b] = inst.v2()(a, b) >= top - eps - p.tol;
        if (in_br[a][b]) {
          lo = std::min(lo, inst.v1()(a, b));
          hi[a] = std::max(hi[a], inst.v1()(a, b));
        }
      }
      w = std::max(w, lo);
    }
    double u1 = self_tolerant ? kInf : w;
    double u2 = kInf;
    for (std::size_t a = 0; a < na; ++a) {
      if (hi[a] < w - eps - p.tol) continue;  // a not in A_eps
      double top = -kInf;
      for (std::size_t b = 0; b < nb; ++b) {
        top = std::max(top, inst.v2()(a, b));
        if (self_tolerant && in_br[a][b]) {
          u1 = std::min(u1, inst.v1()(a, b));
          u2 = std::min(u2, inst.v2()(a, b));
        }
      }
      if (!self_tolerant) u2 = std::min(u2, top);
    }
    const double reg = p.c * std::pow(eps, p.d);
    if (u1 + reg < rep.beta1) {
      rep.beta1 = u1 + reg;
      rep.eps1_star = eps;
    }
    if (u2 + reg < rep.beta2) {
      rep.beta2 = u2 + reg;
      rep.eps2_star = eps;
    }
  }
  rep.breakpoints = std::move(grid);
  return rep;
}

BenchmarkReport compute_benchmark(const Instance& inst, BenchmarkKind kind,
                                  const BenchmarkParams& p) {
  switch (kind) {
    case BenchmarkKind::kOriginal: {
      const StackelbergResult s = stackelberg(inst, p.tol);
      BenchmarkReport rep;
      rep.beta1 = s.beta1_orig;
      rep.beta2 = s.beta2_orig;
      rep.breakpoints = {0.0};
      return rep;
    }
    case BenchmarkKind::kGammaTolerant: {
      BenchmarkParams q = p;
      q.c = 1.0;
      q.d = 1.0;
      return benchmark_gamma_tolerant(inst, q);
    }
    case BenchmarkKind::kSelfTolerant:
      return benchmark_self_tolerant(inst, p);
    case BenchmarkKind::kGeneralized:
      return benchmark_gamma_tolerant(inst, p);
  }
  throw Error(ErrorCode::kInvalidParam, "unknown benchmark kind");
}

}  // namespace dsg
