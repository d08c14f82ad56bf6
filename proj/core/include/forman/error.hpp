#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace forman {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidNetwork,
  kEmptyNetwork,
  kIsolatedNode,
  kMissingNodeWeight,
  kNonpositiveWeight,
  kUnknownNode,
  kUndirectedNetwork,
  kStepTooLarge,
  kEmptyInput,
  kNonpositiveBandwidth,
  kDegenerateSupport,
  kInfeasibleMasses,
  kLabelCollision,
  kInvalidSpec,
  kTargetTooLarge,
  kParseError,
  kDuplicateDirectedEdge,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Base exception for every data error raised by the library. The command-line
// tool maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Edge-list ingestion failure; `line` is 1-based, `column` is the 1-based
// token index on that line (0 when the whole line is at fault).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace forman
