#pragma once

#include <cstddef>
#include <string_view>

namespace dampeuler {

enum class BlowupKind { None, GradientBlowup, VacuumApproach, NonFinite, HyperbolicityLoss };

std::string_view to_string(BlowupKind kind) noexcept;

struct BlowupStatus {
  BlowupKind kind = BlowupKind::None;
  double t = 0.0;
  std::size_t location = 0;

  [[nodiscard]] bool detected() const noexcept { return kind != BlowupKind::None; }
};

struct BlowupThresholds {
  double gradient = 1e6;
  double vacuum_density = 1e-8;
};

}  // namespace dampeuler
