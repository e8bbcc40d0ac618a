#pragma once

#include <numbers>

// Physical constants used by the unit conversions. CODATA 2018 values,
// kept in one place so every conversion draws from the same table.
namespace kicksim::constants {

inline constexpr double pi = std::numbers::pi_v<double>;

/// ħ, reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;

/// Atomic mass unit [kg].
inline constexpr double amu = 1.66053906660e-27;

/// Mass of cesium-133 [kg].
inline constexpr double cesium_mass = 132.905451961 * amu;

}  // namespace kicksim::constants
