#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace braidstat {

enum class ErrorCode {
  ParseError,
  GeneratorOutOfRange,
  IndexOutOfRange,
  NonExactDivision,
  DivisionByZero,
  NegativeExponent,
  DimensionMismatch,
  NotOddPrime,
  NotAPolynomial,
  BudgetExceeded,
  ZeroEntry,
  InfiniteInvariants,
  UnknownSuite,
  InvalidArgument,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this one exception type; the
// code lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace braidstat
