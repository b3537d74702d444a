#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dsg {

// Absolute tolerance used to classify ties and gaps between mean rewards.
inline constexpr double kDefaultTol = 1e-12;

// Row-major |A| x |B| matrix, leader index outer.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  bool operator==(const Matrix&) const = default;
};

enum class RangeCheck { kUnitInterval, kFinite };

class Instance {
 public:
  // Validates shapes and entries. kFinite relaxes the [0,1] range check; it
  // exists only for illustrative tables whose entries exceed 1.
  static Instance create(std::vector<std::string> leader_actions,
                         std::vector<std::string> follower_actions, Matrix v1,
                         Matrix v2, RangeCheck range = RangeCheck::kUnitInterval);

  std::size_t num_leader() const { return leader_actions_.size(); }
  std::size_t num_follower() const { return follower_actions_.size(); }
  const std::vector<std::string>& leader_actions() const { return leader_actions_; }
  const std::vector<std::string>& follower_actions() const { return follower_actions_; }
  const Matrix& v1() const { return v1_; }
  const Matrix& v2() const { return v2_; }
  double v(int player, std::size_t a, std::size_t b) const {
    return player == 1 ? v1_(a, b) : v2_(a, b);
  }

  std::size_t leader_index(const std::string& name) const;
  std::size_t follower_index(const std::string& name) const;

  bool operator==(const Instance&) const = default;

 private:
  Instance() = default;
  std::vector<std::string> leader_actions_;
  std::vector<std::string> follower_actions_;
  Matrix v1_;
  Matrix v2_;
};

// Labels "<prefix>1", "<prefix>2", ...
std::vector<std::string> numbered_labels(const std::string& prefix, std::size_t n);

struct StackelbergResult {
  std::size_t a_star = 0;
  std::size_t b_star = 0;
  double beta1_orig = 0.0;
  double beta2_orig = 0.0;
};

std::size_t best_response(const Instance& inst, std::size_t a, double tol = kDefaultTol);
StackelbergResult stackelberg(const Instance& inst, double tol = kDefaultTol);

// {b : v2(a,b) >= max_b' v2(a,b') - eps}, sorted by index.
std::vector<std::size_t> eps_best_response_set(const Instance& inst, std::size_t a,
                                               double eps, double tol = kDefaultTol);
// W(eps) = max_a min_{b in B_eps(a)} v1(a,b).
double relaxed_leader_value(const Instance& inst, double eps, double tol = kDefaultTol);
std::vector<std::size_t> eps_leader_set(const Instance& inst, double eps,
                                        double tol = kDefaultTol);

// sup over player pairs and distinct cells of |dv_i| / |dv_j|; may be +inf.
double lipschitz_constant(const Instance& inst, double tol = kDefaultTol);

}  // namespace dsg
