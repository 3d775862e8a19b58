#pragma once

#include <numbers>

namespace qfric::constants {

// CODATA 2018, SI.
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double k_B = 1.380649e-23;     // J / K
inline constexpr double c = 299792458.0;        // m / s
inline constexpr double eps0 = 8.8541878128e-12; // C^2 N^-1 m^-2

inline constexpr double pi = std::numbers::pi;

} // namespace qfric::constants
