#include "json_util.hpp"

#include <cmath>

#include "dsg/error.hpp"

namespace dsg::detail {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParseError, what + ":" + std::to_string(line) + ":" +
                                            std::to_string(col) + ": malformed document");
  }
}

namespace {

const Json* find(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

[[noreturn]] void bad(const char* key, const char* expected) {
  throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be " + expected);
}

}  // namespace

double get_number(const Json& j, const char* key) {
  const Json* v = find(j, key);
  if (!v) throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  if (!v->is_number()) bad(key, "a number");
  return v->get<double>();
}

double get_number(const Json& j, const char* key, double fallback) {
  return find(j, key) ? get_number(j, key) : fallback;
}

std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (v->is_number_integer()) return v->get<std::int64_t>();
  if (v->is_number() && std::floor(v->get<double>()) == v->get<double>()) {
    return static_cast<std::int64_t>(v->get<double>());
  }
  bad(key, "an integer");
}

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) bad(key, "a string");
  return v->get<std::string>();
}

bool get_bool(const Json& j, const char* key, bool fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(key, "a boolean");
  return v->get<bool>();
}

}  // namespace dsg::detail
