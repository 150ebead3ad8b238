#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dampeuler {

enum class ErrorCode {
  NonPositiveDensity,
  InvalidVRange,
  HyperbolicityLoss,
  NonFiniteValue,
  GridTooSmall,
  SupportExceedsDomain,
  NonMonotoneTime,
  NonUniformTriple,
  InvalidArgument,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code and, for field-level
/// failures, the offending grid index.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace dampeuler
