#include "strainheat/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace strainheat {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;
constexpr double kBisectionTol = 1e-9;  // GHz, on |omega_L - omega_R|
}  // namespace

void validate(const DefectParams& defect) {
    if (!(defect.delta > 0.0)) {
        throw std::invalid_argument("defect tunneling energy must be > 0");
    }
    if (!std::isfinite(defect.slope) || !std::isfinite(defect.offset)) {
        throw std::invalid_argument("defect strain map must be finite");
    }
}

void validate(const DeviceParams& device) {
    validate(device.left);
    validate(device.right);
    if (!(device.g >= 0.0)) {
        throw std::invalid_argument("defect-defect coupling must be >= 0");
    }
}

double asymmetry_energy(const DefectParams& defect, double vp) {
    return defect.slope * vp + defect.offset;
}

DressedSpectrum dress(const DeviceParams& device, double vp) {
    const double eps_l = asymmetry_energy(device.left, vp);
    const double eps_r = asymmetry_energy(device.right, vp);
    const double omega_l = std::hypot(eps_l, device.left.delta);
    const double omega_r = std::hypot(eps_r, device.right.delta);

    // cos(theta) = eps/omega, sin(theta) = Delta/omega > 0, so theta in (0, pi)
    const double theta_l = std::atan2(device.left.delta, eps_l);
    const double theta_r = std::atan2(device.right.delta, eps_r);

    DressedSpectrum s;
    s.omega_left = omega_l;
    s.omega_right = omega_r;
    s.theta_left = theta_l;
    s.theta_right = theta_r;
    s.g_par = device.g * (eps_l / omega_l) * (eps_r / omega_r);
    s.g_perp = device.g * (device.left.delta / omega_l) * (device.right.delta / omega_r);

    s.alpha = std::atan2(s.g_perp, omega_l + omega_r);
    // Keep beta in (0, pi) so the eigenvector labels stay attached to the
    // eigenvalues through the omega_L = omega_R crossing. At the exact
    // crossing the convention is beta = pi/2 (also when g_perp = 0 there).
    s.beta = (omega_l == omega_r) ? kHalfPi
                                  : std::atan2(s.g_perp, omega_l - omega_r);

    const double p = std::hypot(omega_l + omega_r, s.g_perp);
    const double q = std::hypot(omega_l - omega_r, s.g_perp);
    s.eps = {-0.5 * p + 0.5 * s.g_par, 0.5 * p + 0.5 * s.g_par,
             0.5 * q - 0.5 * s.g_par, -0.5 * q - 0.5 * s.g_par};
    return s;
}

TransitionTable transition_table(const DressedSpectrum& spectrum) {
    TransitionTable table;
    for (int l = 0; l < kNumChannels; ++l) {
        TransitionChannel& ch = table.channels[l];
        ch.lower = kChannelLower[l];
        ch.upper = kChannelUpper[l];
        ch.energy = spectrum.eps[ch.upper] - spectrum.eps[ch.lower];
        ch.inverted = ch.energy < 0.0;
    }
    return table;
}

JumpTable jump_table(const DressedSpectrum& spectrum) {
    const double sl = std::sin(spectrum.theta_left);
    const double cl = std::cos(spectrum.theta_left);
    const double sr = std::sin(spectrum.theta_right);
    const double cr = std::cos(spectrum.theta_right);
    const double half_sum = 0.5 * (spectrum.alpha + spectrum.beta);
    const double half_diff = 0.5 * (spectrum.alpha - spectrum.beta);
    const double sin_a = std::sin(spectrum.alpha);
    const double sin_b = std::sin(spectrum.beta);

    JumpTable jumps;
    auto& a_l = jumps.a[static_cast<int>(Reservoir::Left)];
    auto& a_r = jumps.a[static_cast<int>(Reservoir::Right)];
    a_l = {sl * std::sin(half_sum), -cl * sin_a,  sl * std::cos(half_sum),
           sl * std::cos(half_sum), -cl * sin_b, -sl * std::sin(half_sum)};
    a_r = {sr * std::cos(half_diff), -cr * sin_a,  sr * std::sin(half_diff),
           -sr * std::sin(half_diff), cr * sin_b,  sr * std::cos(half_diff)};

    jumps.a0[static_cast<int>(Reservoir::Left)] = {cl * std::cos(spectrum.alpha),
                                                   cl * std::cos(spectrum.beta)};
    jumps.a0[static_cast<int>(Reservoir::Right)] = {cr * std::cos(spectrum.alpha),
                                                    cr * std::cos(spectrum.beta)};
    return jumps;
}

ResonanceScan find_resonances(const DeviceParams& device, double vp_min,
                              double vp_max, int grid_points) {
    validate(device);
    if (!(vp_min < vp_max)) {
        throw std::invalid_argument("resonance scan range is empty");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("resonance scan needs at least 2 grid points");
    }

    auto detuning = [&](double vp) {
        const DressedSpectrum s = dress(device, vp);
        return s.omega_left - s.omega_right;
    };

    const double step = (vp_max - vp_min) / (grid_points - 1);
    std::vector<double> f(grid_points);
    double omega_scale = 0.0;
    bool everywhere_zero = true;
    for (int i = 0; i < grid_points; ++i) {
        const double vp = vp_min + i * step;
        const DressedSpectrum s = dress(device, vp);
        f[i] = s.omega_left - s.omega_right;
        omega_scale = std::fmax(omega_scale, std::fmax(s.omega_left, s.omega_right));
        if (std::fabs(f[i]) > 1e-12 * std::fmax(omega_scale, 1.0)) {
            everywhere_zero = false;
        }
    }

    ResonanceScan scan;
    if (everywhere_zero) {
        scan.always_resonant = true;
        return scan;
    }

    auto push_root = [&](double vp) {
        if (scan.voltages.empty() ||
            std::fabs(scan.voltages.back() - vp) > 1e-6 * step) {
            scan.voltages.push_back(vp);
        }
    };

    for (int i = 0; i < grid_points; ++i) {
        const double xi = vp_min + i * step;
        if (f[i] == 0.0) {
            push_root(xi);
            continue;
        }
        if (i + 1 >= grid_points || f[i + 1] == 0.0 || f[i] * f[i + 1] > 0.0) {
            continue;
        }
        double lo = xi, hi = xi + step;
        double flo = f[i];
        double mid = 0.5 * (lo + hi);
        for (int iter = 0; iter < 200; ++iter) {
            mid = 0.5 * (lo + hi);
            const double fm = detuning(mid);
            if (std::fabs(fm) < kBisectionTol || mid == lo || mid == hi) break;
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        push_root(mid);
    }
    return scan;
}

}  // namespace strainheat
