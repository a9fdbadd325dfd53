#include "strainheat/steady_state.hpp"

#include <cmath>
#include <string>

#include "linalg.hpp"

namespace strainheat {

namespace {

constexpr double kResidualTol = 1e-10;   // vs ||M||_inf
constexpr double kPopulationTol = 1e-9;  // slack on rho in [0, 1]
constexpr double kUndefinedR = 1e-14;    // |qf - qr| below this * scale

void check_populations(const Vec4& rho, const Mat4& m_total) {
    double sum = 0.0;
    for (double r : rho) {
        if (!(r > -kPopulationTol) || !(r < 1.0 + kPopulationTol)) {
            throw SingularGeneratorError(
                "steady-state population outside [0, 1]: rho = " +
                std::to_string(r));
        }
        sum += r;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw SingularGeneratorError("steady-state populations do not sum to 1");
    }
    const Vec4 res = detail::mat_vec(m_total, rho);
    const double norm = detail::inf_norm(m_total);
    for (double r : res) {
        if (std::fabs(r) > kResidualTol * norm) {
            throw SingularGeneratorError("steady-state residual exceeds tolerance");
        }
    }
}

}  // namespace

Populations steady_state(const Mat4& m_total) {
    const double scale = detail::max_abs(m_total);
    if (scale == 0.0) {
        throw SingularGeneratorError("rate matrix is identically zero");
    }

    // Every row is a linear combination of the others (columns sum to zero);
    // replace the most diagonally dominant one with the trace constraint.
    int replaced = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::fabs(m_total[i][i]) > std::fabs(m_total[replaced][replaced])) {
            replaced = i;
        }
    }
    Mat4 a = m_total;
    Vec4 b{};
    a[replaced] = {1.0, 1.0, 1.0, 1.0};
    b[replaced] = 1.0;

    Populations out{detail::solve4(a, b, scale)};
    check_populations(out.rho, m_total);
    return out;
}

Populations steady_state_closed_form(const ChannelRates& rates) {
    double a[kNumChannels + 1];
    double b[kNumChannels + 1];
    for (int l = 0; l < kNumChannels; ++l) {
        a[l + 1] = rates.down[0][l] + rates.down[1][l];
        b[l + 1] = rates.up[0][l] + rates.up[1][l];
    }
    const double a1 = a[1], a2 = a[2], a3 = a[3], a4 = a[4], a5 = a[5], a6 = a[6];
    const double b1 = b[1], b2 = b[2], b3 = b[3], b4 = b[4], b5 = b[5], b6 = b[6];

    const double n1 = (a4 + a5 + b1) * (a3 * a6 + a2 * (a6 + b3)) +
                      (a3 * a4 + a2 * (a4 + b1)) * b5 +
                      a1 * (a5 * a6 + a4 * (a6 + b3 + b5));
    const double n2 = a5 * a6 * b2 +
                      (a4 * b2 + b1 * (b2 + b4)) * (a6 + b3 + b5) +
                      a4 * b3 * b6 + b1 * (b3 + b5) * b6 +
                      a5 * b3 * (b2 + b4 + b6);
    const double n3 = a3 * a6 * b4 +
                      (a2 * b4 + a1 * (b2 + b4)) * (a6 + b3 + b5) +
                      a2 * b5 * b6 + a1 * (b3 + b5) * b6 +
                      a3 * b5 * (b2 + b4 + b6);
    const double n4 = a2 * a5 * b4 + a1 * a5 * (b2 + b4) +
                      (a1 + a2) * (a4 + a5) * b6 + a2 * b1 * b6 +
                      a3 * a4 * (b2 + b6) + a3 * (a5 + b1) * (b2 + b4 + b6);

    const double norm = n1 + n2 + n3 + n4;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw SingularGeneratorError(
            "closed-form steady state is degenerate (disconnected level graph)");
    }
    return Populations{{n1 / norm, n2 / norm, n3 / norm, n4 / norm}};
}

double heat_current(const RateMatrix& m_mu, const Vec4& eps,
                    const Populations& rho) {
    const Vec4 flow = detail::mat_vec(m_mu.m, rho.rho);
    return eps[0] * flow[0] + eps[1] * flow[1] + eps[2] * flow[2] +
           eps[3] * flow[3];
}

FluxTable channel_fluxes(const ChannelRates& rates, const Populations& rho) {
    FluxTable table{};
    for (int mu = 0; mu < 2; ++mu) {
        for (int l = 0; l < kNumChannels; ++l) {
            table.phi[mu][l] = rates.up[mu][l] * rho.rho[kChannelLower[l]] -
                               rates.down[mu][l] * rho.rho[kChannelUpper[l]];
        }
    }
    return table;
}

HeatReport solve_transport(const DeviceParams& device,
                           const ReservoirParams& left,
                           const ReservoirParams& right, double vp) {
    validate(device);
    const DressedSpectrum spectrum = dress(device, vp);
    const TransitionTable table = transition_table(spectrum);
    const JumpTable jumps = jump_table(spectrum);
    const ChannelRates rates = channel_rates(table, jumps, left, right);
    const RateMatrix m_left = rate_matrix(rates, Reservoir::Left);
    const RateMatrix m_right = rate_matrix(rates, Reservoir::Right);

    Mat4 m_total{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m_total[i][j] = m_left.m[i][j] + m_right.m[i][j];
        }
    }

    HeatReport report;
    report.populations = steady_state(m_total);
    report.fluxes = channel_fluxes(rates, report.populations);
    report.q_left = heat_current(m_left, spectrum.eps, report.populations);
    report.q_right = heat_current(m_right, spectrum.eps, report.populations);
    report.residual = std::fabs(report.q_left + report.q_right);

    // The flux decomposition must reproduce the bracket form. The absolute
    // term covers the cancellation-dominated millikelvin regime.
    double max_eps = 0.0;
    for (double e : spectrum.eps) max_eps = std::fmax(max_eps, std::fabs(e));
    const double slack =
        1e-15 * detail::inf_norm(m_total) * std::fmax(max_eps, 1.0);
    for (int mu = 0; mu < 2; ++mu) {
        double q_flux = 0.0;
        for (int l = 0; l < kNumChannels; ++l) {
            q_flux += table.channels[l].energy * report.fluxes.phi[mu][l];
        }
        const double q_bracket = (mu == 0) ? report.q_left : report.q_right;
        if (std::fabs(q_flux - q_bracket) >
            1e-12 * std::fabs(q_bracket) + slack) {
            throw SingularGeneratorError(
                "heat-current routes disagree beyond tolerance");
        }
    }
    return report;
}

RectificationResult rectification_from(double q_forward, double q_reverse) {
    RectificationResult result;
    result.q_forward = q_forward;
    result.q_reverse = q_reverse;
    const double scale = std::fmax(std::fabs(q_forward), std::fabs(q_reverse));
    const double denom = std::fabs(q_forward - q_reverse);
    result.defined = scale > 0.0 && denom >= kUndefinedR * scale;
    result.r = result.defined ? std::fabs(q_forward + q_reverse) / denom : 0.0;
    return result;
}

RectificationResult rectification(const DeviceParams& device,
                                  const ReservoirParams& left,
                                  const ReservoirParams& right, double vp) {
    // Forward always has the hotter bath on the right; each gamma stays
    // attached to its defect under the temperature exchange.
    ReservoirParams fwd_left = left;
    ReservoirParams fwd_right = right;
    if (fwd_right.temperature_k < fwd_left.temperature_k) {
        std::swap(fwd_left.temperature_k, fwd_right.temperature_k);
    }
    ReservoirParams rev_left = fwd_left;
    ReservoirParams rev_right = fwd_right;
    std::swap(rev_left.temperature_k, rev_right.temperature_k);

    const HeatReport forward = solve_transport(device, fwd_left, fwd_right, vp);
    const HeatReport reverse = solve_transport(device, rev_left, rev_right, vp);
    return rectification_from(forward.q_right, reverse.q_right);
}

}  // namespace strainheat
