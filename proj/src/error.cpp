#include "dsg/error.hpp"

namespace dsg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kUnknownAction: return "UnknownAction";
    case ErrorCode::kUnknownFamily: return "UnknownFamily";
    case ErrorCode::kInvalidParam: return "InvalidParam";
    case ErrorCode::kIncompatibleInfoStructure: return "IncompatibleInfoStructure";
    case ErrorCode::kScheduleExhausted: return "ScheduleExhausted";
    case ErrorCode::kEmptyHistoryArm: return "EmptyHistoryArm";
    case ErrorCode::kNonPositiveRegret: return "NonPositiveRegret";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dsg
