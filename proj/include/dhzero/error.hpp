#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhzero {

enum class ErrorCode {
  PrecisionTooLow,
  ParseError,
  PoleError,
  DomainError,
  TolTooTight,
  PrecisionError,
  ExcludedPoint,
  PoleOfX,
  DivideByZero,
  DerivativeUnderflow,
  NoRootInBracket,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dhzero
