#pragma once

#include <numbers>

namespace chernshift {

inline constexpr double kPi = std::numbers::pi;

// CODATA 2018
inline constexpr double kFineStructure = 1.0 / 137.035999084;

inline constexpr const char *kVersion = "1.0.0";

} // namespace chernshift
