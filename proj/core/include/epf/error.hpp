#pragma once

#include <stdexcept>
#include <string>

namespace epf {

// Error codes used across modules. User-facing messages carry the code name
// so CLI output can be grepped.
enum class ErrorCode {
  EmptyInput,
  MalformedRow,
  UnknownColumn,
  DuplicateRow,
  MissingData,
  InvalidMaturity,
  NonPositiveSettle,
  StaleQuote,
  DivisionByZero,
  Scarcity,
  DegenerateResponse,
  SingularFit,
  InvalidConfig,
  InsufficientHistory,
  DegenerateVariance,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epf
