#pragma once

#include <string>
#include <vector>

#include "dsg/instance.hpp"

namespace dsg {

struct BenchmarkParams {
  double gamma = 1.0;
  double c = 1.0;  // regularizer scale
  double d = 1.0;  // regularizer exponent, in (0,1]
  double tol = kDefaultTol;

  void validate() const;
  // c * eps^d; exact eps when (c, d) = (1, 1).
  double regularizer(double eps) const;
  bool operator==(const BenchmarkParams&) const = default;
};

enum class BenchmarkKind { kOriginal, kGammaTolerant, kSelfTolerant, kGeneralized };

const char* to_string(BenchmarkKind kind);
BenchmarkKind benchmark_kind_from_string(const std::string& s);

struct BenchmarkReport {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double eps1_star = 0.0;
  double eps2_star = 0.0;
  std::vector<double> breakpoints;
};

std::vector<double> benchmark_breakpoints(const Instance& inst, double gamma,
                                          double tol = kDefaultTol);

BenchmarkReport benchmark_gamma_tolerant(const Instance& inst, const BenchmarkParams& p);
BenchmarkReport benchmark_self_tolerant(const Instance& inst, const BenchmarkParams& p);

// Brute-force cross-check on an epsilon grid plus the follower gap points.
// Only used for validation of the exact routines above.
BenchmarkReport grid_benchmark_oracle(const Instance& inst, const BenchmarkParams& p,
                                      double resolution, bool self_tolerant = false);

// Dispatch over the four variants. kGammaTolerant forces (c, d) = (1, 1);
// kOriginal ignores p and reports the Stackelberg values at eps = 0.
BenchmarkReport compute_benchmark(const Instance& inst, BenchmarkKind kind,
                                  const BenchmarkParams& p);

}  // namespace dsg
