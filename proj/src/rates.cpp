#include "strainheat/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "strainheat/units.hpp"

namespace strainheat {

void validate(const ReservoirParams& reservoir) {
    if (!(reservoir.temperature_k > 0.0)) {
        throw std::invalid_argument("reservoir temperature must be > 0");
    }
    if (!(reservoir.gamma >= 0.0)) {
        throw std::invalid_argument("dissipation rate must be >= 0");
    }
}

double bose_occupation(double omega, double temperature_ghz) {
    if (!(omega > 0.0)) {
        throw std::domain_error("bose_occupation requires omega > 0");
    }
    if (!(temperature_ghz > 0.0)) {
        throw std::domain_error("bose_occupation requires temperature > 0");
    }
    const double x = omega / temperature_ghz;
    if (x > 40.0) {
        // 1/(e^x - 1) = e^-x / (1 - e^-x); the correction is below 1 ulp here
        return std::exp(-x);
    }
    return 1.0 / std::expm1(x);
}

ChannelRates channel_rates(const TransitionTable& table, const JumpTable& jumps,
                           const ReservoirParams& left,
                           const ReservoirParams& right) {
    validate(left);
    validate(right);
    const double t_ghz[2] = {kelvin_to_ghz(left.temperature_k),
                             kelvin_to_ghz(right.temperature_k)};
    const double gamma[2] = {left.gamma, right.gamma};

    ChannelRates rates{};
    for (int mu = 0; mu < 2; ++mu) {
        for (int l = 0; l < kNumChannels; ++l) {
            const TransitionChannel& ch = table.channels[l];
            const double a = jumps.a[mu][l];
            const double weight = 2.0 * gamma[mu] * a * a;
            if (ch.energy == 0.0) {
                // Degenerate channel: n(omega) omega -> T keeps the generator
                // finite and continuous through the degeneracy.
                rates.down[mu][l] = weight * t_ghz[mu];
                rates.up[mu][l] = weight * t_ghz[mu];
                continue;
            }
            const double n = bose_occupation(std::fabs(ch.energy), t_ghz[mu]);
            if (!ch.inverted) {
                rates.down[mu][l] = weight * (n + 1.0);
                rates.up[mu][l] = weight * n;
            } else {
                // The nominal upper level lies below: emission feeds it.
                rates.down[mu][l] = weight * n;
                rates.up[mu][l] = weight * (n + 1.0);
            }
        }
    }
    return rates;
}

RateMatrix rate_matrix(const ChannelRates& rates, Reservoir mu) {
    const int m = static_cast<int>(mu);
    RateMatrix out{};
    for (int l = 0; l < kNumChannels; ++l) {
        const int j = kChannelLower[l];
        const int u = kChannelUpper[l];
        const double a = rates.down[m][l];
        const double b = rates.up[m][l];
        out.m[j][u] += a;
        out.m[u][u] -= a;
        out.m[u][j] += b;
        out.m[j][j] -= b;
    }
    return out;
}

}  // namespace strainheat
