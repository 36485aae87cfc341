#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace multislice {

/// Stable error codes. The CLI maps these onto process exit codes, so the
/// numeric values must not be reordered.
enum class ErrorCode : int {
  InvalidArgument = 2,
  BudgetExceeded = 3,
  DimensionMismatch = 4,
  Precondition = 5,
  Parse = 6,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace multislice
