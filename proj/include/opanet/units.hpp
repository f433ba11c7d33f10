#pragma once

#include <cmath>
#include <numbers>

// Unit conventions used throughout: interfaces speak the units data sheets
// and link budgets use (km, um, ps, dB/km, W^-1 km^-1); the wave equations
// run in SI (m, s, W^-1 m^-1). These helpers hold the conversion constants
// so the factors appear exactly once.
namespace opanet::units {

inline constexpr double speed_of_light = 2.99792458e8;  // m/s

inline constexpr double um_to_m = 1e-6;
inline constexpr double km_to_m = 1e3;
inline constexpr double ns_to_s = 1e-9;
inline constexpr double ps_to_s = 1e-12;

// Dispersion slope: 1 ps/(nm^2 km) == 1e3 s/m^3.
inline constexpr double disp_slope_to_si = 1e3;

// dB of a power ratio.
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// 10*log10(e^2) = 20/ln 10: decibels of gain per unit of gamma*P*L in the
// exponential regime. About 8.686.
inline constexpr double db_per_exp2 = 20.0 / std::numbers::ln10;

// 10*log10(4) = 20*ln2/ln10: the constant subtracted in the decibel form of
// the phase-matched high-gain limit. Often quoted rounded to 6 dB; the exact
// value is kept so the decibel and linear forms agree to round-off.
inline constexpr double high_gain_offset_db =
    20.0 * std::numbers::ln2 / std::numbers::ln10;

}  // namespace opanet::units
