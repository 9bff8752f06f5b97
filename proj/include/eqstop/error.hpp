#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqstop {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  ToleranceNotMet,
  NoSignChange,
  MaxIterExceeded,
  NegativeTime,
  DivisionByZero,
  DomainError,
  NoInteriorCrossing,
  TimeOrder,
  NonConvergence,
  GridTooCoarse,
  EmptyPath,
  InvalidBeta,
  Unsupported,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace eqstop
