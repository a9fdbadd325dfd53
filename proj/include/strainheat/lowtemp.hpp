// lowtemp.hpp — low-temperature truncated rate model.
//
// In the regime exp(-omega/T) << 1 the population dynamics reduces to a
// truncated channel set: the (2<->3), (3<->4) and (4<->1) transitions for
// both baths plus the right-bath upward injections out of the ground level
// on (1->3) and (1->4). Occupations are replaced by their leading Boltzmann
// factors, n(omega) -> exp(-omega/T) and n+1 -> 1. The truncated generator
// is solved numerically; it serves as an independent cross-check of the full
// solver in the millikelvin regime.

#pragma once

#include "strainheat/rates.hpp"
#include "strainheat/spectrum.hpp"
#include "strainheat/steady_state.hpp"

#include <vector>

namespace strainheat {

struct LowTempModel {
    Mat4 m_left;    // left-bath part of the truncated generator, GHz
    Mat4 m_right;   // right-bath part; column sums of both are zero
    Vec4 eps;       // eigenenergies, for heat-current contraction
    // Largest retained Boltzmann factor max exp(-omega_l/T_mu) over channels
    // (2<->3), (3<->4), (4<->1) and both baths; the approximation is
    // advertised for values < 0.1 (advisory, never enforced).
    double max_boltzmann;
    bool in_regime;
};

struct LowTempComparison {
    double vp;
    double q_exact_forward;
    double q_approx_forward;
    double rel_dev_forward;  // |approx - exact| / |exact|
    double q_exact_reverse;
    double q_approx_reverse;
    double rel_dev_reverse;
    bool in_regime;
};

LowTempModel lowtemp_generator(const DressedSpectrum& spectrum,
                               const TransitionTable& table,
                               const JumpTable& jumps,
                               const ReservoirParams& left,
                               const ReservoirParams& right);

// Null vector of the truncated generator under the trace constraint.
// Throws SingularGeneratorError when the retained channels degenerate.
Populations lowtemp_steady_state(const LowTempModel& model);

// Q_R = <eps| M_right |rho_m> over the truncated channel set. The truncation
// keeps only right-bath injections out of the ground level, so the result is
// not antisymmetric under temperature exchange; callers compare orientations
// explicitly.
double lowtemp_heat_current(const LowTempModel& model);

// Exact vs truncated heat current over a voltage grid, forward (temperatures
// as given) and reverse (temperatures exchanged).
std::vector<LowTempComparison> compare_exact_approx(
    const DeviceParams& device, const ReservoirParams& left,
    const ReservoirParams& right, const std::vector<double>& vp_grid);

}  // namespace strainheat
