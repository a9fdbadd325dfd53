// steady_state.hpp — stationary populations, heat currents, channel fluxes
// and the rectification factor.

#pragma once

#include <stdexcept>

#include "strainheat/rates.hpp"
#include "strainheat/spectrum.hpp"

namespace strainheat {

// Null space of the total generator is not one-dimensional (disconnected
// level graph), or the linear solve is numerically rank-deficient.
struct SingularGeneratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Populations {
    Vec4 rho;  // (rho_11 .. rho_44), sums to 1
};

// Net upward flux per reservoir and channel:
//   phi[mu][l] = B_{mu l} rho_lower - A_{mu l} rho_upper
// Positive means reservoir mu pumps the channel upward. The convention is
// fixed by requiring Q_mu = sum_l omega_l phi[mu][l].
struct FluxTable {
    std::array<std::array<double, kNumChannels>, 2> phi;
};

struct HeatReport {
    double q_left;    // heat current out of the left reservoir, GHz^2
    double q_right;   // positive = reservoir feeds the system
    Populations populations;
    FluxTable fluxes;
    double residual;  // conservation defect |q_left + q_right|
};

struct RectificationResult {
    double q_forward;  // Q_R with the hotter bath on the right, GHz^2
    double q_reverse;  // Q_R after exchanging the two temperatures
    double r;          // |qf + qr| / |qf - qr|, in [0, 1]; valid iff `defined`
    bool defined;      // false when |qf - qr| is below noise scale
};

// Unique normalized null vector of the summed generator, solved directly with
// the trace row replacing the most diagonally dominant (redundant) row.
// Throws SingularGeneratorError when the null space has dimension > 1.
Populations steady_state(const Mat4& m_total);

// Closed-form polynomial steady state in the summed channel rates
// A_l = sum_mu A_{mu l}, B_l = sum_mu B_{mu l}. Algebraically identical to
// the null vector of steady_state(); kept as an independent evaluation route.
Populations steady_state_closed_form(const ChannelRates& rates);

// <eps| M_mu |rho>: stationary energy flow from reservoir mu into the system.
double heat_current(const RateMatrix& m_mu, const Vec4& eps,
                    const Populations& rho);

FluxTable channel_fluxes(const ChannelRates& rates, const Populations& rho);

// Full pipeline for one operating point: spectrum, rates, steady state,
// currents by both routes (bracket and flux sum, cross-checked), fluxes.
HeatReport solve_transport(const DeviceParams& device,
                           const ReservoirParams& left,
                           const ReservoirParams& right, double vp);

// R from a forward/reverse current pair; `defined` is false when the
// denominator is below 1e-14 of the current scale.
RectificationResult rectification_from(double q_forward, double q_reverse);

// Runs the configuration with the hotter bath on the right ("forward"),
// exchanges the two temperatures only (each gamma stays attached to its
// defect), reruns, and reports Q_f = Q_R(forward), Q_r = Q_R(reverse), R.
RectificationResult rectification(const DeviceParams& device,
                                  const ReservoirParams& left,
                                  const ReservoirParams& right, double vp);

}  // namespace strainheat
