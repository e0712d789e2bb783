#pragma once

#include <numbers>

namespace fieldforge {

inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // H/m, classical value
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Geometric mean radius of a round conductor with uniform current, relative to its radius.
inline constexpr double kUniformGmrRatio = 0.7788007830714049;  // exp(-1/4)

}  // namespace fieldforge
