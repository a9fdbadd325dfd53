#include "strainheat/lowtemp.hpp"

#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "strainheat/units.hpp"

namespace strainheat {

namespace {

// Retained two-sided channels: (2<->3), (3<->4), (4<->1) = indices 0, 4, 5.
constexpr int kCh23 = 0;
constexpr int kCh34 = 4;
constexpr int kCh41 = 5;
// Right-bath upward injection out of the ground level on (1->3).
constexpr int kCh13 = 3;

// One bath's contribution. Downward rates keep n+1 -> 1; upward rates carry
// the Boltzmann factor exp(-omega/T).
Mat4 bath_generator(const TransitionTable& table, const JumpTable& jumps,
                    int mu, double gamma, double t_ghz, bool inject_ground) {
    Mat4 m{};
    auto boltzmann = [&](int l) {
        return std::exp(-table.channels[l].energy / t_ghz);
    };
    for (int l : {kCh23, kCh34, kCh41}) {
        const int j = kChannelLower[l];
        const int u = kChannelUpper[l];
        const double a2 = jumps.a[mu][l] * jumps.a[mu][l];
        const double down = 2.0 * gamma * a2;
        m[j][u] += down;
        m[u][u] -= down;
        if (l != kCh41) {
            const double up = down * boltzmann(l);
            m[u][j] += up;
            m[j][j] -= up;
        }
    }
    if (inject_ground) {
        // The truncation keeps the ground-level excitations (1->3), (1->4)
        // for the right bath only.
        for (int l : {kCh13, kCh41}) {
            const int u = kChannelUpper[l];
            const double a2 = jumps.a[mu][l] * jumps.a[mu][l];
            const double up = 2.0 * gamma * a2 * boltzmann(l);
            m[u][0] += up;
            m[0][0] -= up;
        }
    }
    return m;
}

}  // namespace

LowTempModel lowtemp_generator(const DressedSpectrum& spectrum,
                               const TransitionTable& table,
                               const JumpTable& jumps,
                               const ReservoirParams& left,
                               const ReservoirParams& right) {
    validate(left);
    validate(right);
    const double t_left = kelvin_to_ghz(left.temperature_k);
    const double t_right = kelvin_to_ghz(right.temperature_k);

    LowTempModel model;
    model.m_left = bath_generator(table, jumps, 0, left.gamma, t_left, false);
    model.m_right = bath_generator(table, jumps, 1, right.gamma, t_right, true);
    model.eps = spectrum.eps;

    model.max_boltzmann = 0.0;
    for (int l : {kCh23, kCh34, kCh41}) {
        for (double t : {t_left, t_right}) {
            model.max_boltzmann = std::fmax(
                model.max_boltzmann, std::exp(-table.channels[l].energy / t));
        }
    }
    model.in_regime = model.max_boltzmann < 0.1;
    return model;
}

Populations lowtemp_steady_state(const LowTempModel& model) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m[i][j] = model.m_left[i][j] + model.m_right[i][j];
        }
    }
    const double scale = detail::max_abs(m);
    if (scale == 0.0) {
        throw SingularGeneratorError("low-temperature generator is zero");
    }
    // The truncated system is written with the trace constraint in the last
    // row from the start.
    Vec4 b{};
    m[3] = {1.0, 1.0, 1.0, 1.0};
    b[3] = 1.0;
    return Populations{detail::solve4(m, b, scale)};
}

double lowtemp_heat_current(const LowTempModel& model) {
    if (detail::max_abs(model.m_right) == 0.0) {
        return 0.0;  // <eps| 0 |rho> regardless of the populations
    }
    const Populations rho = lowtemp_steady_state(model);
    const Vec4 flow = detail::mat_vec(model.m_right, rho.rho);
    return model.eps[0] * flow[0] + model.eps[1] * flow[1] +
           model.eps[2] * flow[2] + model.eps[3] * flow[3];
}

std::vector<LowTempComparison> compare_exact_approx(
    const DeviceParams& device, const ReservoirParams& left,
    const ReservoirParams& right, const std::vector<double>& vp_grid) {
    ReservoirParams rev_left = left;
    ReservoirParams rev_right = right;
    std::swap(rev_left.temperature_k, rev_right.temperature_k);

    auto rel_dev = [](double approx, double exact) {
        if (exact == 0.0) {
            return approx == 0.0 ? 0.0
                                 : std::numeric_limits<double>::infinity();
        }
        return std::fabs(approx - exact) / std::fabs(exact);
    };

    std::vector<LowTempComparison> rows;
    rows.reserve(vp_grid.size());
    for (double vp : vp_grid) {
        const DressedSpectrum spectrum = dress(device, vp);
        const TransitionTable table = transition_table(spectrum);
        const JumpTable jumps = jump_table(spectrum);

        LowTempComparison row;
        row.vp = vp;
        row.q_exact_forward = solve_transport(device, left, right, vp).q_right;
        row.q_exact_reverse =
            solve_transport(device, rev_left, rev_right, vp).q_right;

        const LowTempModel fwd =
            lowtemp_generator(spectrum, table, jumps, left, right);
        const LowTempModel rev =
            lowtemp_generator(spectrum, table, jumps, rev_left, rev_right);
        row.q_approx_forward = lowtemp_heat_current(fwd);
        row.q_approx_reverse = lowtemp_heat_current(rev);
        row.rel_dev_forward = rel_dev(row.q_approx_forward, row.q_exact_forward);
        row.rel_dev_reverse = rel_dev(row.q_approx_reverse, row.q_exact_reverse);
        row.in_regime = fwd.in_regime;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace strainheat
