#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfc {

// Every domain failure carries one of these codes; the CLI prints the
// name verbatim on stderr and experiment rows use it as their status.
enum class ErrorCode {
  InvalidGamma,
  NonMonotoneCdf,
  RegimeMismatch,
  NotSorted,
  NotGraphical,
  CliqueTooLarge,
  ParseError,
  LoopRejected,
  CliqueInfeasible,
  ResidualNotGraphical,
  RealizationFailed,
  WindowMissed,
  CliqueOversized,
  SaturationInfeasible,
  OuterInfeasible,
  RetriesExhausted,
  InsufficientData,
  ConfigError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace sfc
