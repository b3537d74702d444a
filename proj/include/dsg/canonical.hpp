#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dsg/instance.hpp"

namespace dsg {

// Parameters for the named instance families. Each family reads only the
// fields it needs. Action indices are 0-based.
struct FamilyParams {
  double delta = 0.1;
  double x = 0.2;  // misaligned_inverted
  double y = 0.1;
  std::size_t num_leader = 2;    // sqrt_lower, dlower
  std::size_t num_follower = 2;
  std::size_t target_a = 0;      // sqrt_lower: (a', b'); (0, 0) is the base instance
  std::size_t target_b = 0;      // dlower: b'; 0 is the base instance

  bool operator==(const FamilyParams&) const = default;
};

const std::vector<std::string>& canonical_families();
bool family_uses_delta(const std::string& family);

Instance make_canonical_instance(const std::string& family, const FamilyParams& p);

}  // namespace dsg
