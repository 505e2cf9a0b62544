#include "scafnav/error.h"

namespace scafnav {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::kSyntaxError: return "SyntaxError";
  case ErrorCode::kUnclosedRingBond: return "UnclosedRingBond";
  case ErrorCode::kUnsupportedElement: return "UnsupportedElement";
  case ErrorCode::kValenceError: return "ValenceError";
  case ErrorCode::kEmptyGraph: return "EmptyGraph";
  case ErrorCode::kMultiComponentInput: return "MultiComponentInput";
  case ErrorCode::kInvalidScaffold: return "InvalidScaffold";
  case ErrorCode::kTimeout: return "Timeout";
  case ErrorCode::kUnknownScaffold: return "UnknownScaffold";
  case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
  case ErrorCode::kIoError: return "IoError";
  case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
  case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
  case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
  case ErrorCode::kTooManyHits: return "TooManyHits";
  case ErrorCode::kEmptySubset: return "EmptySubset";
  case ErrorCode::kUnknownKind: return "UnknownKind";
  case ErrorCode::kBindError: return "BindError";
  case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

}  // namespace scafnav
