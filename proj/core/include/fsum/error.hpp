#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsum {

enum class ErrorKind {
  ZeroCumulativeWeight,
  RowOutOfRange,
  EmptyRow,
  InvalidMatrix,
  InvalidClassPair,
  NotInClass,
  InsufficientResolution,
  DegreeExceeded,
  InvalidExponent,
  InvalidGrid,
  InvalidDelta,
  ZeroModulus,
  InvalidModulus,
  InvalidGamma,
  InvalidParams,
  QuadratureFailure,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fsum
