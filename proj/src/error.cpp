#include "sfc/error.hpp"

namespace sfc {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::NonMonotoneCdf: return "NonMonotoneCdf";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::NotGraphical: return "NotGraphical";
    case ErrorCode::CliqueTooLarge: return "CliqueTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LoopRejected: return "LoopRejected";
    case ErrorCode::CliqueInfeasible: return "CliqueInfeasible";
    case ErrorCode::ResidualNotGraphical: return "ResidualNotGraphical";
    case ErrorCode::RealizationFailed: return "RealizationFailed";
    case ErrorCode::WindowMissed: return "WindowMissed";
    case ErrorCode::CliqueOversized: return "CliqueOversized";
    case ErrorCode::SaturationInfeasible: return "SaturationInfeasible";
    case ErrorCode::OuterInfeasible: return "OuterInfeasible";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sfc
