#include "dsg/instance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dsg/error.hpp"

namespace dsg {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows.front().size();
  m.data.reserve(m.rows * m.cols);
  for (const auto& row : rows) {
    if (row.size() != m.cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    m.data.insert(m.data.end(), row.begin(), row.end());
  }
  return m;
}

Instance Instance::create(std::vector<std::string> leader_actions,
                          std::vector<std::string> follower_actions, Matrix v1, Matrix v2,
                          RangeCheck range) {
  const std::size_t na = leader_actions.size();
  const std::size_t nb = follower_actions.size();
  if (na == 0 || nb == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "action sets must be nonempty");
  }
  for (const Matrix* m : {&v1, &v2}) {
    if (m->rows != na || m->cols != nb || m->data.size() != na * nb) {
      std::ostringstream os;
      os << "matrix is " << m->rows << "x" << m->cols << ", expected " << na << "x" << nb;
      throw Error(ErrorCode::kDimensionMismatch, os.str());
    }
    for (double x : m->data) {
      if (!std::isfinite(x) ||
          (range == RangeCheck::kUnitInterval && (x < 0.0 || x > 1.0))) {
        std::ostringstream os;
        os << "entry " << x << " outside [0,1]";
        throw Error(ErrorCode::kValueOutOfRange, os.str());
      }
    }
  }
  Instance inst;
  inst.leader_actions_ = std::move(leader_actions);
  inst.follower_actions_ = std::move(follower_actions);
  inst.v1_ = std::move(v1);
  inst.v2_ = std::move(v2);
  return inst;
}

std::size_t Instance::leader_index(const std::string& name) const {
  for (std::size_t i = 0; i < leader_actions_.size(); ++i) {
    if (leader_actions_[i] == name) return i;
  }
  throw Error(ErrorCode::kUnknownAction, "leader action '" + name + "'");
}

std::size_t Instance::follower_index(const std::string& name) const {
  for (std::size_t i = 0; i < follower_actions_.size(); ++i) {
    if (follower_actions_[i] == name) return i;
  }
  throw Error(ErrorCode::kUnknownAction, "follower action '" + name + "'");
}

std::vector<std::string> numbered_labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

namespace {

void check_leader(const Instance& inst, std::size_t a) {
  if (a >= inst.num_leader()) {
    throw Error(ErrorCode::kUnknownAction, "leader index " + std::to_string(a));
  }
}

double row_max(const Matrix& m, std::size_t r) {
  double best = m(r, 0);
  for (std::size_t c = 1; c < m.cols; ++c) best = std::max(best, m(r, c));
  return best;
}

}  // namespace

std::size_t best_response(const Instance& inst, std::size_t a, double tol) {
  check_leader(inst, a);
  const double top = row_max(inst.v2(), a);
  std::size_t best = inst.num_follower();
  for (std::size_t b = 0; b < inst.num_follower(); ++b) {
    if (inst.v2()(a, b) < top - tol) continue;
    // Among follower ties the leader gets the worst outcome.
    if (best == inst.num_follower() || inst.v1()(a, b) < inst.v1()(a, best) - tol) best = b;
  }
  return best;
}

StackelbergResult stackelberg(const Instance& inst, double tol) {
  StackelbergResult res;
  bool have = false;
  for (std::size_t a = 0; a < inst.num_leader(); ++a) {
    const std::size_t b = best_response(inst, a, tol);
    const double u = inst.v1()(a, b);
    if (!have || u > res.beta1_orig + tol) {
      res = {a, b, u, inst.v2()(a, b)};
      have = true;
    }
  }
  return res;
}

std::vector<std::size_t> eps_best_response_set(const Instance& inst, std::size_t a,
                                               double eps, double tol) {
  check_leader(inst, a);
  const double threshold = row_max(inst.v2(), a) - eps - tol;
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < inst.num_follower(); ++b) {
    if (inst.v2()(a, b) >= threshold) out.push_back(b);
  }
  return out;
}

double relaxed_leader_value(const Instance& inst, double eps, double tol) {
  double w = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < inst.num_leader(); ++a) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t b : eps_best_response_set(inst, a, eps, tol)) {
      worst = std::min(worst, inst.v1()(a, b));
    }
    w = std::max(w, worst);
  }
  return w;
}

std::vector<std::size_t> eps_leader_set(const Instance& inst, double eps, double tol) {
  const double w = relaxed_leader_value(inst, eps, tol);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < inst.num_leader(); ++a) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t b : eps_best_response_set(inst, a, eps, tol)) {
      best = std::max(best, inst.v1()(a, b));
    }
    if (best >= w - eps - tol) out.push_back(a);
  }
  return out;
}

double lipschitz_constant(const Instance& inst, double tol) {
  const std::size_t n = inst.num_leader() * inst.num_follower();
  const auto& x = inst.v1().data;
  const auto& y = inst.v2().data;
  double sup = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double d1 = std::abs(x[p] - x[q]);
      const double d2 = std::abs(y[p] - y[q]);
      const bool z1 = d1 <= tol;
      const bool z2 = d2 <= tol;
      if (z1 && z2) {
        sup = std::max(sup, 1.0);
      } else if (z1 || z2) {
        return std::numeric_limits<double>::infinity();
      } else {
        sup = std::max(sup, std::max(d1 / d2, d2 / d1));
      }
    }
  }
  return sup;
}

}  // namespace dsg
