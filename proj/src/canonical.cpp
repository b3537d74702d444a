#include "dsg/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "dsg/error.hpp"

namespace dsg {

namespace {

using Rows = std::vector<std::vector<double>>;

Instance build(const Rows& v1, const Rows& v2, RangeCheck range = RangeCheck::kUnitInterval) {
  const std::size_t na = v1.size();
  const std::size_t nb = v1.front().size();
  try {
    return Instance::create(numbered_labels("a", na), numbered_labels("b", nb),
                            Matrix::from_rows(v1), Matrix::from_rows(v2), range);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValueOutOfRange) {
      throw Error(ErrorCode::kInvalidParam, std::string("family parameters give ") + e.what());
    }
    throw;
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParam, what);
}

void require_delta(double delta) {
  require(std::isfinite(delta) && delta >= 0.0, "delta must be a nonnegative number");
}

Instance table1(double d, bool tilde) {
  return build({{0.6, 0.2}, {0.5, 0.4}}, {{d, tilde ? 2 * d : 0.0}, {0.6, 0.4}});
}

Instance table2(double d) {
  return build({{0.5 + d, 0.2}, {0.5, 0.4}}, {{0.4, 0.0}, {3 * d, 2 * d}});
}

Instance table4(double d, bool tilde) {
  return build({{0.5 + d, 0.0}, {0.5, 0.5}}, {{d, tilde ? 2 * d : 0.0}, {3 * d, 3 * d}});
}

Instance sqrt_lower(const FamilyParams& p) {
  require(p.num_leader >= 2 && p.num_follower >= 1, "sqrt_lower needs |A| >= 2, |B| >= 1");
  require(p.target_a < p.num_leader && p.target_b < p.num_follower, "index out of range");
  const bool base = p.target_a == 0 && p.target_b == 0;
  require(base || p.target_a != 0, "sqrt_lower index must be (a1,b1) or have a' != a1");
  const double d = p.delta;
  Rows v(p.num_leader, std::vector<double>(p.num_follower, 0.0));
  std::fill(v[0].begin(), v[0].end(), d);
  if (!base) v[p.target_a][p.target_b] = 2 * d;
  return build(v, v);
}

Instance dlower(const FamilyParams& p) {
  require(p.num_leader >= 2 && p.num_follower >= 2, "dlower needs |A| >= 2, |B| >= 2");
  require(p.target_b < p.num_follower, "b' out of range");
  const double d = p.delta;
  Rows v1(p.num_leader, std::vector<double>(p.num_follower, 0.0));
  Rows v2 = v1;
  std::fill(v1[0].begin(), v1[0].end(), 0.5);
  std::fill(v2[0].begin(), v2[0].end(), 3 * d);
  for (std::size_t a = 1; a < p.num_leader; ++a) {
    v1[a][0] = 0.5 + d;
    v2[a][0] = d;
    if (p.target_b != 0) v2[a][p.target_b] = 2 * d;
  }
  return build(v1, v2);
}

}  // namespace

const std::vector<std::string>& canonical_families() {
  static const std::vector<std::string> names = {
      "table1_I", "table1_Itilde", "table2",  "table3",
      "table4_I", "table4_Itilde", "table5",  "table8",
      "misaligned_inverted",       "sqrt_lower", "dlower"};
  return names;
}

bool family_uses_delta(const std::string& family) {
  return family != "table3" && family != "table8" && family != "misaligned_inverted";
}

Instance make_canonical_instance(const std::string& family, const FamilyParams& p) {
  if (family_uses_delta(family)) require_delta(p.delta);
  const double d = p.delta;
  if (family == "table1_I") return table1(d, false);
  if (family == "table1_Itilde") return table1(d, true);
  if (family == "table2") return table2(d);
  if (family == "table3") return table2(0.1);
  if (family == "table4_I") return table4(d, false);
  if (family == "table4_Itilde") return table4(d, true);
  if (family == "table5") {
    // Some leader entries exceed 1 here, so only finiteness is checked.
    return build({{1.0, 0.7, 1.1}, {0.8, 1.2, 0.9}, {0.5, 0.7, 2.0}},
                 {{0.5 + 2 * d, 0.5 + d, 0.0}, {3.5 * d, 3 * d, 4 * d}, {0.5, 0.0, 0.1}},
                 RangeCheck::kFinite);
  }
  if (family == "table8") return build({{0.6, 0.2}, {0.5, 0.4}}, {{0.05, 0.1}, {0.2, 0.15}});
  if (family == "misaligned_inverted") {
    require(p.x > 0.0 && p.x < 1.0 / 3 && p.y > 0.0 && p.y < 1.0 / 3, "x, y must lie in (0, 1/3)");
    return build({{1.0, 1 - p.x}, {1 - 2 * p.x, 1 - 3 * p.x}}, {{0.0, p.y}, {2 * p.y, 3 * p.y}});
  }
  if (family == "sqrt_lower") return sqrt_lower(p);
  if (family == "dlower") return dlower(p);
  throw Error(ErrorCode::kUnknownFamily, "'" + family + "'");
}

}  // namespace dsg
