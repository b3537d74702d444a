#pragma once

#include <string>

#include "json.hpp"

namespace dsg::detail {

using Json = nlohmann::ordered_json;

// Parses text, converting syntax errors into ParseError with line:column.
Json parse_json(const std::string& text, const std::string& what);

// Typed field access that reports the offending key.
double get_number(const Json& j, const char* key);
double get_number(const Json& j, const char* key, double fallback);
std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback);
std::string get_string(const Json& j, const char* key, const std::string& fallback);
bool get_bool(const Json& j, const char* key, bool fallback);

}  // namespace dsg::detail
