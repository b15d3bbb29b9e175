#pragma once

#include <span>

namespace arclp {

inline constexpr double kHalfPi = 1.5707963267948966;

/// Largest alpha in [0, pi/2] with base - d1 sin(a) + d2 (1 - cos(a)) >= 0 for
/// every a in [0, alpha]. Each component is bracketed on a 64-point grid and
/// refined by 60 bisection steps; the minimum over components is returned.
/// Requires base > 0.
double max_alpha_positivity(std::span<const double> base, std::span<const double> d1, std::span<const double> d2);

/// Largest alpha in [0, cap] with v - alpha dv >= 0.
double max_linear_step(std::span<const double> v, std::span<const double> dv, double cap = 1.0);

}  // namespace arclp
