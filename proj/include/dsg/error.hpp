#pragma once

#include <stdexcept>
#include <string>

namespace dsg {

enum class ErrorCode {
  kDimensionMismatch,
  kValueOutOfRange,
  kUnknownAction,
  kUnknownFamily,
  kInvalidParam,
  kIncompatibleInfoStructure,
  kScheduleExhausted,
  kEmptyHistoryArm,
  kNonPositiveRegret,
  kParseError,
  kIoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace dsg
