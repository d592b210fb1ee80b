#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rbsc {

enum class ErrorCode {
  EqualPoints,
  DuplicatePoints,
  SameLine,
  Syntax,
  Semantic,
  InvalidInstance,
  UnknownSetId,
  NotLinearSystem,
  BoundedBudget,
  UnboundedBudget,
  PreconditionViolated,
  DegreeExceeded,
  TooManyBlues,
  RedDegreeExceeded,
  TooLarge,
  PlacementExhausted,
  NotRegular,
  GeometryAudit,
  FilterUnsatisfiable,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EqualPoints: return "EqualPoints";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::SameLine: return "SameLine";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Semantic: return "SemanticError";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::UnknownSetId: return "UnknownSetId";
    case ErrorCode::NotLinearSystem: return "NotLinearSystem";
    case ErrorCode::BoundedBudget: return "BoundedBudget";
    case ErrorCode::UnboundedBudget: return "UnboundedBudget";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegreeExceeded: return "DegreeExceeded";
    case ErrorCode::TooManyBlues: return "TooManyBlues";
    case ErrorCode::RedDegreeExceeded: return "RedDegreeExceeded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::PlacementExhausted: return "PlacementExhausted";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::GeometryAudit: return "GeometryAudit";
    case ErrorCode::FilterUnsatisfiable: return "FilterUnsatisfiable";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code;
/// the message is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rbsc
