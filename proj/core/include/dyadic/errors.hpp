#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

enum class ErrorCode {
  EmptyInput,
  NotPowerOfTwo,
  NonPositiveValue,
  NonFiniteValue,
  IndexOutOfRange,
  ParameterDomain,
  OutsideDomain,
  SolverRange,
  FormMismatch,
  SamplerExhausted,
  MalformedInput,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every recoverable failure in the library is reported through this type;
// `field()` names the offending input where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace dyadic
