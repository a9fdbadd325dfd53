// units.hpp — unit conventions shared across the library
//
// All energies and frequencies are stored as ordinary frequencies in GHz
// (values quoted as E/h). Temperatures enter in kelvin and are converted
// once via k_B/h so that omega/T is dimensionless. Heat currents come out
// in GHz^2; multiply by kGhzSquaredWatt for SI power.

#pragma once

namespace strainheat {

// k_B / h in GHz per kelvin
inline constexpr double kKelvinGhz = 20.836619;

// h * (1 GHz)^2 in watt
inline constexpr double kGhzSquaredWatt = 6.62607e-16;

constexpr double kelvin_to_ghz(double t_kelvin) { return kKelvinGhz * t_kelvin; }

// Dissipation rates are quoted as gamma/2pi in MHz; this returns gamma in GHz.
constexpr double gamma_from_mhz_over_2pi(double mhz) {
    return 2.0 * 3.14159265358979323846 * 1.0e-3 * mhz;
}

}  // namespace strainheat
