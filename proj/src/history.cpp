#include "dsg/history.hpp"

#include <sstream>

#include "dsg/error.hpp"

namespace dsg {

const char* to_string(InfoStructure info) {
  return info == InfoStructure::kStrong ? "strong" : "weak";
}

InfoStructure info_from_string(const std::string& s) {
  if (s == "strong" || s == "StrongDSG") return InfoStructure::kStrong;
  if (s == "weak" || s == "WeakDSG") return InfoStructure::kWeak;
  throw Error(ErrorCode::kInvalidParam, "unknown information structure '" + s + "'");
}

ArmHistory leader_arm_history(const LeaderHistory& h) {
  ArmHistory out;
  out.reserve(h.size());
  for (const auto& e : h) out.push_back({e.a, e.r1});
  return out;
}

ArmHistory per_arm_history(const FollowerHistory& h, std::size_t a) {
  ArmHistory out;
  for (const auto& e : h) {
    if (e.a == a) out.push_back({e.b, e.r2});
  }
  return out;
}

std::string serialize(const LeaderHistory& h, const Instance& inst) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& e : h) {
    os << "t=" << e.t << " a=" << inst.leader_actions().at(e.a);
    if (e.b) os << " b=" << inst.follower_actions().at(*e.b);
    os << " r1=" << e.r1 << '\n';
  }
  return os.str();
}

void set_point_mass(Distribution& out, std::size_t n, std::size_t k) {
  out.assign(n, 0.0);
  out[k] = 1.0;
}

Distribution point_mass(std::size_t n, std::size_t k) {
  Distribution d;
  set_point_mass(d, n, k);
  return d;
}

std::size_t point_mass_index(const Distribution& d) {
  std::size_t k = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 1.0) {
      k = i;
    } else if (d[i] != 0.0) {
      return d.size();
    }
  }
  return k;
}

}  // namespace dsg
