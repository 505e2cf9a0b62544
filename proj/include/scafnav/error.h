#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scafnav {

enum class ErrorCode {
  kSyntaxError,
  kUnclosedRingBond,
  kUnsupportedElement,
  kValenceError,
  kEmptyGraph,
  kMultiComponentInput,
  kInvalidScaffold,
  kTimeout,
  kUnknownScaffold,
  kBudgetExceeded,
  kIoError,
  kFormatVersionMismatch,
  kChecksumMismatch,
  kInsufficientPoints,
  kTooManyHits,
  kEmptySubset,
  kUnknownKind,
  kBindError,
  kBadRequest,
};

std::string_view error_code_name(ErrorCode code);

// True for the codes produced by the SMILES parser.
constexpr bool is_parse_error(ErrorCode code) {
  return code == ErrorCode::kSyntaxError ||
         code == ErrorCode::kUnclosedRingBond ||
         code == ErrorCode::kUnsupportedElement ||
         code == ErrorCode::kValenceError;
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " +
                           message),
        code_(code), detail_(message) { }

  ErrorCode code() const noexcept { return code_; }
  const std::string &detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace scafnav
