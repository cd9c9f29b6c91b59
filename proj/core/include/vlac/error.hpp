#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vlac {

enum class ErrorCode {
  NotPrime,
  EvenModulus,
  DivisionByZero,
  BothZero,
  GeneratorMismatch,
  InvalidArgument,
  DimensionMismatch,
  NotSquare,
  BrokenReference,
  Malformed,
  VersionUnsupported,
  TrailingBytes,
  Timeout,
  TransportError,
  ProtocolViolation,
  ProverFailed,
  DegreeDeficient,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vlac
