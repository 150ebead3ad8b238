#include "dampeuler/error.hpp"

#include <string>

namespace dampeuler {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::InvalidVRange: return "InvalidVRange";
    case ErrorCode::HyperbolicityLoss: return "HyperbolicityLoss";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::SupportExceedsDomain: return "SupportExceedsDomain";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::NonUniformTriple: return "NonUniformTriple";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what +
                         (index ? " (node " + std::to_string(*index) + ")" : "")),
      code_(code),
      index_(index) {}

}  // namespace dampeuler
