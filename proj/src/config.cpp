#include "dsg/config.hpp"

#include <cmath>

#include "dsg/error.hpp"
#include "dsg/io.hpp"
#include "json_util.hpp"

namespace dsg {

using detail::Json;
using detail::get_bool;
using detail::get_int;
using detail::get_number;
using detail::get_string;

namespace {

ParamRule rule_from_json(const Json& j, const char* key, ParamRule fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (it->is_number()) return ParamRule::fixed(it->get<double>());
  if (!it->is_object()) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be a number or object");
  }
  ParamRule r;
  r.formula = formula_from_string(get_string(*it, "formula", "fixed"));
  r.value = r.formula == ParamRule::Formula::kFixed ? get_number(*it, "value")
                                                     : get_number(*it, "scale", 1.0);
  r.c = get_number(*it, "c", 1.0);
  r.d = get_number(*it, "d", 1.0);
  return r;
}

Json rule_to_json(const ParamRule& r) {
  if (r.formula == ParamRule::Formula::kFixed) return r.value;
  Json j;
  j["formula"] = to_string(r.formula);
  j["scale"] = r.value;
  if (r.c != 1.0) j["c"] = r.c;
  if (r.d != 1.0) j["d"] = r.d;
  return j;
}

// Either "M_schedule" (array or object) or the shorthand keys inline.
PhaseSchedule schedule_from_json(const Json& j) {
  PhaseSchedule s;
  const Json* src = &j;
  auto it = j.find("M_schedule");
  if (it != j.end()) {
    if (it->is_array()) {
      for (const auto& x : *it) {
        if (!x.is_number_integer()) throw Error(ErrorCode::kParseError, "M_schedule entries must be integers");
        s.lengths.push_back(x.get<std::int64_t>());
      }
      s.auto_extend = get_bool(j, "auto_extend", false);
      return s;
    }
    src = &*it;
  }
  s.log_factor = get_number(*src, "log_factor", 1.0);
  s.base = get_number(*src, "base", 4.0);
  s.phases = static_cast<int>(get_int(*src, "phases", 0));
  s.auto_extend = get_bool(*src, "auto_extend", get_bool(j, "auto_extend", false));
  return s;
}

Json schedule_to_json(const PhaseSchedule& s) {
  Json j;
  if (!s.lengths.empty()) {
    j = s.lengths;
    return j;
  }
  j["log_factor"] = s.log_factor;
  j["base"] = s.base;
  j["phases"] = s.phases;
  j["auto_extend"] = s.auto_extend;
  return j;
}

LeaderSpec leader_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "leader must be an object");
  LeaderSpec s;
  s.kind = leader_kind_from_string(get_string(j, "kind", "explore_then_ucb"));
  s.E = rule_from_json(j, "E", s.E);
  s.E_prime = rule_from_json(j, "E_prime", s.E_prime);
  s.L = get_number(j, "L", s.L);
  s.C = rule_from_json(j, "C", s.C);
  s.c1 = get_number(j, "c1", s.c1);
  s.c3 = get_number(j, "c3", s.c3);
  s.schedule = schedule_from_json(j);
  s.width = get_number(j, "width", s.width);
  s.arm = static_cast<std::size_t>(get_int(j, "arm", 0));
  return s;
}

Json leader_to_json(const LeaderSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["E"] = rule_to_json(s.E);
  j["E_prime"] = rule_to_json(s.E_prime);
  j["L"] = s.L;
  j["C"] = rule_to_json(s.C);
  j["c1"] = s.c1;
  j["c3"] = s.c3;
  j["M_schedule"] = schedule_to_json(s.schedule);
  if (!s.schedule.lengths.empty()) j["auto_extend"] = s.schedule.auto_extend;
  j["width"] = s.width;
  j["arm"] = s.arm;
  return j;
}

FollowerSpec follower_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "follower must be an object");
  const std::string kind = get_string(j, "kind", "per_arm");
  if (kind != "per_arm") throw Error(ErrorCode::kParseError, "follower kind must be per_arm");
  auto it = j.find("base");
  if (it == j.end() || !it->is_object()) throw Error(ErrorCode::kParseError, "follower needs a base object");
  const Json& b = *it;
  FollowerSpec s;
  s.base = follower_base_from_string(get_string(b, "kind", "ucb"));
  s.E = rule_from_json(b, "E", s.E);
  s.schedule = schedule_from_json(b);
  s.width = get_number(b, "width",
                       s.base == FollowerBaseKind::kAae ? kDefaultAaeWidth : kDefaultUcbWidth);
  s.arm = static_cast<std::size_t>(get_int(b, "arm", 0));
  return s;
}

Json follower_to_json(const FollowerSpec& s) {
  Json b;
  b["kind"] = to_string(s.base);
  b["E"] = rule_to_json(s.E);
  b["M_schedule"] = schedule_to_json(s.schedule);
  if (!s.schedule.lengths.empty()) b["auto_extend"] = s.schedule.auto_extend;
  b["width"] = s.width;
  b["arm"] = s.arm;
  Json j;
  j["kind"] = "per_arm";
  j["base"] = std::move(b);
  return j;
}

InstanceSource instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "instance must be an object");
  InstanceSource s;
  s.file = get_string(j, "file", "");
  s.family = get_string(j, "family", "");
  if (s.file.empty() == s.family.empty()) {
    throw Error(ErrorCode::kParseError, "instance needs exactly one of 'family' or 'file'");
  }
  FamilyParams& p = s.params;
  p.delta = get_number(j, "delta", p.delta);
  p.x = get_number(j, "x", p.x);
  p.y = get_number(j, "y", p.y);
  p.num_leader = static_cast<std::size_t>(get_int(j, "num_leader", 2));
  p.num_follower = static_cast<std::size_t>(get_int(j, "num_follower", 2));
  p.target_a = static_cast<std::size_t>(get_int(j, "target_a", 0));
  p.target_b = static_cast<std::size_t>(get_int(j, "target_b", 0));
  return s;
}

Json instance_to_json(const InstanceSource& s) {
  Json j;
  if (!s.file.empty()) {
    j["file"] = s.file;
    return j;
  }
  j["family"] = s.family;
  j["delta"] = s.params.delta;
  j["x"] = s.params.x;
  j["y"] = s.params.y;
  j["num_leader"] = s.params.num_leader;
  j["num_follower"] = s.params.num_follower;
  j["target_a"] = s.params.target_a;
  j["target_b"] = s.params.target_b;
  return j;
}

BenchmarkSelection benchmark_from_json(const Json& j) {
  if (j.is_string()) {
    BenchmarkSelection b;
    b.kind = benchmark_kind_from_string(j.get<std::string>());
    return b;
  }
  BenchmarkSelection b;
  b.kind = benchmark_kind_from_string(get_string(j, "kind", "gamma_tolerant"));
  b.params.gamma = get_number(j, "gamma", b.params.gamma);
  b.params.c = get_number(j, "c", b.params.c);
  b.params.d = get_number(j, "d", b.params.d);
  b.params.tol = get_number(j, "tol", b.params.tol);
  return b;
}

Json benchmark_to_json(const BenchmarkSelection& b) {
  Json j;
  j["kind"] = to_string(b.kind);
  j["gamma"] = b.params.gamma;
  j["c"] = b.params.c;
  j["d"] = b.params.d;
  j["tol"] = b.params.tol;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "config must be an object");
  ExperimentConfig cfg;
  if (!j.contains("instance")) throw Error(ErrorCode::kParseError, "config needs 'instance'");
  cfg.instance = instance_from_json(j["instance"]);
  if (auto it = j.find("delta_coupling"); it != j.end() && !it->is_null()) {
    DeltaCoupling dc;
    dc.kappa = get_number(*it, "kappa");
    dc.power = get_number(*it, "power");
    cfg.delta_coupling = dc;
  }
  if (!j.contains("leader") || !j.contains("follower")) {
    throw Error(ErrorCode::kParseError, "config needs 'leader' and 'follower'");
  }
  cfg.leader = leader_from_json(j["leader"]);
  cfg.follower = follower_from_json(j["follower"]);
  if (auto it = j.find("game"); it != j.end()) {
    cfg.game.horizon = get_int(*it, "horizon", cfg.game.horizon);
    cfg.game.info = info_from_string(get_string(*it, "info", "strong"));
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_integer()) throw Error(ErrorCode::kParseError, "seed must be an integer");
      cfg.game.base_seed = s->get<std::uint64_t>();
    }
    cfg.game.trials = static_cast<std::size_t>(get_int(*it, "trials", 1));
  }
  if (auto it = j.find("benchmarks"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kParseError, "benchmarks must be an array");
    for (const auto& b : *it) cfg.benchmarks.push_back(benchmark_from_json(b));
  } else {
    cfg.benchmarks.push_back({});
  }
  if (auto it = j.find("horizons"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kParseError, "horizons must be an array");
    for (const auto& h : *it) {
      if (!h.is_number_integer()) throw Error(ErrorCode::kParseError, "horizons must be integers");
      cfg.horizons.push_back(h.get<std::int64_t>());
    }
  }
  cfg.write_traces = get_bool(j, "write_traces", cfg.write_traces);
  cfg.sampled_regret = get_bool(j, "sampled_regret", cfg.sampled_regret);
  cfg.validate();
  return cfg;
}

}  // namespace

double DeltaCoupling::delta(std::int64_t T) const {
  return kappa * std::pow(static_cast<double>(T), -power);
}

void ExperimentConfig::validate() const {
  if (game.horizon < 1) throw Error(ErrorCode::kInvalidParam, "horizon must be >= 1");
  if (game.trials < 1) throw Error(ErrorCode::kInvalidParam, "trials must be >= 1");
  for (auto T : horizons) {
    if (T < 1) throw Error(ErrorCode::kInvalidParam, "sweep horizons must be >= 1");
  }
  if (benchmarks.empty()) throw Error(ErrorCode::kInvalidParam, "no benchmarks selected");
  for (const auto& b : benchmarks) b.params.validate();
  if (delta_coupling) {
    if (instance.family.empty() || !family_uses_delta(instance.family)) {
      throw Error(ErrorCode::kInvalidParam, "delta coupling needs a family with a delta parameter");
    }
  }
  if (leader.kind == LeaderKind::kPhasedUcb && game.info != InfoStructure::kWeak) {
    throw Error(ErrorCode::kIncompatibleInfoStructure, "phased_ucb requires info = weak");
  }
}

ExperimentConfig config_from_string(const std::string& text) {
  return config_from_json(detail::parse_json(text, "config"));
}

std::string config_to_string(const ExperimentConfig& cfg) {
  Json j;
  j["instance"] = instance_to_json(cfg.instance);
  if (cfg.delta_coupling) {
    j["delta_coupling"] = {{"kappa", cfg.delta_coupling->kappa},
                           {"power", cfg.delta_coupling->power}};
  }
  j["leader"] = leader_to_json(cfg.leader);
  j["follower"] = follower_to_json(cfg.follower);
  j["game"] = {{"horizon", cfg.game.horizon},
               {"info", to_string(cfg.game.info)},
               {"seed", cfg.game.base_seed},
               {"trials", cfg.game.trials}};
  Json bs = Json::array();
  for (const auto& b : cfg.benchmarks) bs.push_back(benchmark_to_json(b));
  j["benchmarks"] = std::move(bs);
  j["horizons"] = cfg.horizons;
  j["write_traces"] = cfg.write_traces;
  j["sampled_regret"] = cfg.sampled_regret;
  return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  try {
    return config_from_string(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw Error(e.code(), path + ": " + e.detail());
    throw;
  }
}

LeaderSpec leader_spec_from_string(const std::string& text) {
  return leader_from_json(detail::parse_json(text, "leader"));
}

FollowerSpec follower_spec_from_string(const std::string& text) {
  return follower_from_json(detail::parse_json(text, "follower"));
}

}  // namespace dsg
