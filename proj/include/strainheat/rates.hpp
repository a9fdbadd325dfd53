// rates.hpp — per-reservoir thermal transition rates and the 4x4 population
// generator M_mu built from the jump table under a flat spectral density.

#pragma once

#include "strainheat/spectrum.hpp"

namespace strainheat {

struct ReservoirParams {
    double temperature_k;  // bath temperature in kelvin; must be > 0
    double gamma;          // flat dissipation rate, GHz; must be >= 0
};

void validate(const ReservoirParams& reservoir);

// Downward (emission, ~ n+1) and upward (absorption, ~ n) rates per channel
// and reservoir, expressed in the fixed (lower, upper) channel frame. For a
// channel flagged inverted the roles are swapped internally so that `down`
// always drains the nominal upper level.
struct ChannelRates {
    std::array<std::array<double, kNumChannels>, 2> down;  // A_{mu l}, GHz
    std::array<std::array<double, kNumChannels>, 2> up;    // B_{mu l}, GHz
};

struct RateMatrix {
    Mat4 m;  // population generator, GHz; columns sum to zero
};

// Bose-Einstein occupation 1/(exp(omega/T) - 1), both arguments in GHz.
// Stable for omega/T large (underflows to 0) and small (expm1).
// Throws std::domain_error for omega <= 0.
double bose_occupation(double omega, double temperature_ghz);

// A_{mu l} = 2 gamma (n+1) a^2, B_{mu l} = 2 gamma n a^2, with the inverted
// and zero-energy channel conventions described in the implementation.
ChannelRates channel_rates(const TransitionTable& table, const JumpTable& jumps,
                           const ReservoirParams& left,
                           const ReservoirParams& right);

// Assemble M_mu by channel bookkeeping: channel (j, m) contributes
//   d rho_jj / dt += A rho_mm - B rho_jj
//   d rho_mm / dt += B rho_jj - A rho_mm
RateMatrix rate_matrix(const ChannelRates& rates, Reservoir mu);

}  // namespace strainheat
