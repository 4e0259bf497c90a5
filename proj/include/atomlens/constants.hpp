#pragma once

#include <numbers>

// CODATA 2018 values, SI units. Shared by every module.
namespace atomlens::constants {

inline constexpr double speed_of_light = 299792458.0;           // m/s, exact
inline constexpr double planck = 6.62607015e-34;                // J s, exact
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

// 87Rb D2 line.
inline constexpr double rb87_d2_wavelength = 780e-9;  // m, nominal
inline constexpr double rb87_d2_lifetime = 26.25e-9;      // s

}  // namespace atomlens::constants
