#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace svccoupling {

enum class ErrorCode {
  kDuplicateService,
  kUnknownService,
  kSelfDependency,
  kInvalidServiceId,
  kInvalidWeight,
  kEmptyGraph,
  kUnconnectedPair,
  kParseError,
  kValidationError,
  kIoError,
  kInvalidOption,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error in an input document. Line and column are 1-based; 0 means
/// the position is unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace svccoupling
