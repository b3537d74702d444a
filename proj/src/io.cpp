#include "dsg/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dsg/error.hpp"
#include "json_util.hpp"

namespace dsg {

using detail::Json;

namespace {

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Accepts nested rows or a flat row-major array.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const char* key) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, std::string(key) + " must be an array");
  Matrix m(rows, cols);
  auto number = [&](const Json& x) {
    if (!x.is_number()) throw Error(ErrorCode::kParseError, std::string(key) + " has a non-number");
    return x.get<double>();
  };
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != rows) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(key) + " has " +
                                                     std::to_string(j.size()) + " rows");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (!j[r].is_array() || j[r].size() != cols) {
        throw Error(ErrorCode::kDimensionMismatch, std::string(key) + " row " +
                                                       std::to_string(r + 1) + " has wrong length");
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c]);
    }
  } else {
    if (j.size() != rows * cols) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(key) + " has " +
                                                     std::to_string(j.size()) + " entries");
    }
    for (std::size_t i = 0; i < j.size(); ++i) m.data[i] = number(j[i]);
  }
  return m;
}

std::vector<std::string> labels(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw Error(ErrorCode::kParseError, std::string("missing string list '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& x : *it) {
    if (!x.is_string()) throw Error(ErrorCode::kParseError, std::string(key) + " has a non-string");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

std::string instance_to_string(const Instance& inst) {
  Json j;
  j["leader_actions"] = inst.leader_actions();
  j["follower_actions"] = inst.follower_actions();
  j["v1"] = matrix_json(inst.v1());
  j["v2"] = matrix_json(inst.v2());
  return j.dump(2) + "\n";
}

Instance instance_from_string(const std::string& text) {
  const Json j = detail::parse_json(text, "instance");
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "instance must be an object");
  auto la = labels(j, "leader_actions");
  auto lb = labels(j, "follower_actions");
  if (!j.contains("v1") || !j.contains("v2")) {
    throw Error(ErrorCode::kParseError, "instance needs v1 and v2");
  }
  Matrix v1 = matrix_from_json(j["v1"], la.size(), lb.size(), "v1");
  Matrix v2 = matrix_from_json(j["v2"], la.size(), lb.size(), "v2");
  return Instance::create(std::move(la), std::move(lb), std::move(v1), std::move(v2));
}

Instance load_instance(const std::string& path) {
  try {
    return instance_from_string(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw Error(e.code(), path + ": " + e.detail());
    throw;
  }
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_string(inst));
}

std::string report_to_string(const BenchmarkReport& rep) {
  Json j;
  j["beta1"] = rep.beta1;
  j["beta2"] = rep.beta2;
  j["eps1_star"] = rep.eps1_star;
  j["eps2_star"] = rep.eps2_star;
  j["breakpoints"] = rep.breakpoints;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const RunTrace& trace, const Instance& inst,
                     bool with_header, long trial) {
  if (with_header) os << (trial >= 0 ? "trial,t,a,b,r1,r2,v1,v2\n" : "t,a,b,r1,r2,v1,v2\n");
  std::size_t t = 0;
  for (const auto& r : trace.rounds) {
    if (trial >= 0) os << trial << ',';
    os << ++t << ',' << inst.leader_actions()[r.a] << ',' << inst.follower_actions()[r.b] << ','
       << format_double(r.r1) << ',' << format_double(r.r2) << ',' << format_double(r.v1) << ','
       << format_double(r.v2) << '\n';
  }
}

}  // namespace dsg
