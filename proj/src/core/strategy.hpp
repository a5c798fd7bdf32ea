#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace adsgame {

// The four ways a manufacturer can sell the driving package: hardware
// Unbundled/Bundled with the vehicle, crossed with Perpetual/Subscription
// software licensing. Enum order is the canonical tie-break order.
enum class Strategy : int { UP = 0, US = 1, BP = 2, BS = 3 };

inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::UP, Strategy::US, Strategy::BP, Strategy::BS};

constexpr bool is_bundled(Strategy s) {
  return s == Strategy::BP || s == Strategy::BS;
}

constexpr bool is_subscription(Strategy s) {
  return s == Strategy::US || s == Strategy::BS;
}

constexpr const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::UP: return "UP";
    case Strategy::US: return "US";
    case Strategy::BP: return "BP";
    case Strategy::BS: return "BS";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_string(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

// Software sale mode for the restricted-market scenario, where the
// unbundled and bundled hardware strategies coincide.
enum class SoftwareMode { perpetual, subscription };

}  // namespace adsgame
