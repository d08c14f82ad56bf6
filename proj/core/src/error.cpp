#include "forman/error.hpp"

namespace forman {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidNetwork: return "InvalidNetwork";
    case ErrorCode::kEmptyNetwork: return "EmptyNetwork";
    case ErrorCode::kIsolatedNode: return "IsolatedNode";
    case ErrorCode::kMissingNodeWeight: return "MissingNodeWeight";
    case ErrorCode::kNonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUndirectedNetwork: return "UndirectedNetwork";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNonpositiveBandwidth: return "NonpositiveBandwidth";
    case ErrorCode::kDegenerateSupport: return "DegenerateSupport";
    case ErrorCode::kInfeasibleMasses: return "InfeasibleMasses";
    case ErrorCode::kLabelCollision: return "LabelCollision";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kTargetTooLarge: return "TargetTooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateDirectedEdge: return "DuplicateDirectedEdge";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& reason)
    : Error(code, "line " + std::to_string(line) +
                      (column > 0 ? ", column " + std::to_string(column) : "") +
                      ": " + reason),
      line_(line),
      column_(column) {}

}  // namespace forman
