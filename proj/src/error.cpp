#include "svccoupling/error.hpp"

#include <string>

namespace svccoupling {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateService: return "DuplicateService";
    case ErrorCode::kUnknownService: return "UnknownService";
    case ErrorCode::kSelfDependency: return "SelfDependency";
    case ErrorCode::kInvalidServiceId: return "InvalidServiceId";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kUnconnectedPair: return "UnconnectedPair";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidOption: return "InvalidOption";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::kParseError,
            line == 0 ? message
                      : "line " + std::to_string(line) +
                            (column == 0 ? "" : ", column " + std::to_string(column)) +
                            ": " + message),
      line_(line),
      column_(column) {}

}  // namespace svccoupling
