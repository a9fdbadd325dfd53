// spectrum.hpp — dressed two-defect spectrum, transition channels and jump
// coefficients for two strain-tuned two-level defects with sigma_z sigma_z
// coupling.
//
// Device model: each defect mu has tunneling energy Delta_mu and a
// piezo-voltage-controlled asymmetry energy eps_mu(V_p) = slope*V_p + offset.
// The local rotation that diagonalizes each defect turns the pair coupling
// g sigma_z sigma_z into a longitudinal part g_par = g cos(th_L) cos(th_R)
// and a transversal part g_perp = g sin(th_L) sin(th_R); the resulting
// four-level spectrum and its six transition channels are analytic.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace strainheat {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

enum class Reservoir : int { Left = 0, Right = 1 };

inline constexpr int kNumChannels = 6;

// Channel l couples eigenlevels (lower, upper); order is fixed:
// (3,2), (1,2), (4,2), (1,3), (4,3), (1,4) in 1-based level labels.
inline constexpr std::array<int, kNumChannels> kChannelLower = {2, 0, 3, 0, 3, 0};
inline constexpr std::array<int, kNumChannels> kChannelUpper = {1, 1, 1, 2, 2, 3};

struct DefectParams {
    double delta;   // tunneling energy Delta, GHz; must be > 0
    double slope;   // strain-map slope c, GHz per volt
    double offset;  // strain-map offset, GHz (eps at V_p = 0)
};

struct DeviceParams {
    DefectParams left;
    DefectParams right;
    double g;  // defect-defect coupling, GHz; must be >= 0
};

// Throw std::invalid_argument when an invariant is violated.
void validate(const DefectParams& defect);
void validate(const DeviceParams& device);

struct DressedSpectrum {
    double omega_left;   // sqrt(eps_L^2 + Delta_L^2), GHz
    double omega_right;
    double theta_left;   // mixing angle, cos(theta) = eps/omega
    double theta_right;
    double g_par;        // longitudinal coupling g cos cos, GHz
    double g_perp;       // transversal coupling g sin sin, GHz
    double alpha;        // tan(alpha) = g_perp / (omega_L + omega_R)
    double beta;         // tan(beta)  = g_perp / (omega_L - omega_R), in (0, pi)
    Vec4 eps;            // eigenenergies eps_1..eps_4; they sum to zero
};

struct TransitionChannel {
    int lower;      // 0-based eigenlevel index j
    int upper;      // 0-based eigenlevel index m
    double energy;  // signed eps[upper] - eps[lower], GHz
    bool inverted;  // energy < 0: the nominal "upper" level lies below "lower"
};

struct TransitionTable {
    std::array<TransitionChannel, kNumChannels> channels;
};

struct JumpTable {
    // a[mu][l]: eigenbasis matrix element of the reservoir-mu coupling
    // operator cos(th) sz + sin(th) sx on channel l. Only a^2 feeds rates.
    std::array<std::array<double, kNumChannels>, 2> a;
    // Diagonal-operator coefficients (cos th cos alpha, cos th cos beta) per
    // reservoir. Pure dephasing; informational, never used for populations.
    std::array<std::array<double, 2>, 2> a0;
};

struct ResonanceScan {
    std::vector<double> voltages;  // refined roots of omega_L - omega_R
    // Identical defects: omega_L == omega_R over the whole range, so there is
    // no isolated root to report.
    bool always_resonant = false;
};

// eps_mu(V_p) = slope * vp + offset
double asymmetry_energy(const DefectParams& defect, double vp);

// Dressed frequencies, mixing/dressing angles and the four eigenenergies.
// At omega_L == omega_R the beta branch is pinned to pi/2.
DressedSpectrum dress(const DeviceParams& device, double vp);

// The six channels in fixed order with signed energies.
TransitionTable transition_table(const DressedSpectrum& spectrum);

// Closed-form jump coefficients for both reservoirs.
JumpTable jump_table(const DressedSpectrum& spectrum);

// Scan [vp_min, vp_max] on `grid_points` points for sign changes of
// omega_L - omega_R and refine each bracket by bisection to |d omega| < 1e-9.
ResonanceScan find_resonances(const DeviceParams& device, double vp_min,
                              double vp_max, int grid_points);

}  // namespace strainheat
