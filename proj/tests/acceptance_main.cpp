// acceptance_main.cpp — end-to-end acceptance suite. Each criterion prints
// one [PASS]/[FAIL] line; the binary exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "strainheat/lowtemp.hpp"
#include "strainheat/steady_state.hpp"
#include "strainheat/sweep.hpp"
#include "strainheat/units.hpp"

using namespace strainheat;

namespace {

struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> run;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

const double kGamma3 = gamma_from_mhz_over_2pi(3.0);

std::vector<double> resonance_voltages() {
    const ResonanceScan scan = find_resonances(default_device(), -60.0, 40.0, 2001);
    return scan.voltages;
}

std::vector<Scenario> all_preset_scenarios() {
    std::vector<Scenario> all;
    for (Preset p : {Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5,
                     Preset::Fig6, Preset::Fig7, Preset::Fig8, Preset::Fig9a,
                     Preset::Fig9b, Preset::Fig9c, Preset::Fig9d}) {
        for (auto& [stem, scenario] : preset_variants(p)) {
            all.push_back(scenario);
        }
    }
    return all;
}

// 1. resonance landmarks at -40.3 V and 13.9 V, found in under a second
bool criterion_resonance(std::string& note) {
    const double t0 = now_seconds();
    const std::vector<double> roots = resonance_voltages();
    const double elapsed = now_seconds() - t0;
    char buf[160];
    if (roots.size() != 2) {
        std::snprintf(buf, sizeof(buf), "expected 2 roots, found %zu",
                      roots.size());
        note = buf;
        return false;
    }
    std::snprintf(buf, sizeof(buf), "V_p = %.3f, %.3f (%.3f s)", roots[0],
                  roots[1], elapsed);
    note = buf;
    return std::fabs(roots[0] + 40.3) < 0.5 && std::fabs(roots[1] - 13.9) < 0.5 &&
           elapsed < 1.0;
}

// 2. forward-current maxima of the fig3 sweep sit at a resonance voltage
bool criterion_valve_maxima(std::string& note) {
    const double t0 = now_seconds();
    const std::vector<double> roots = resonance_voltages();
    bool ok = true;
    std::string detail;
    for (double t_hot : {0.5, 1.0}) {
        Scenario s = preset_scenario(Preset::Fig3);
        s.right.temperature_k = t_hot;
        const auto rows = run_scenario(s);
        const auto best = std::max_element(
            rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
                return a.q_forward < b.q_forward;
            });
        double dist = 1e300;
        for (double r : roots) dist = std::min(dist, std::fabs(best->axis - r));
        char buf[120];
        std::snprintf(buf, sizeof(buf), "T_hot=%.1fK argmax=%.2fV (%.2fV off) ",
                      t_hot, best->axis, dist);
        detail += buf;
        ok = ok && dist <= 1.5;
    }
    const double elapsed = now_seconds() - t0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.2f s)", elapsed);
    note = detail + buf;
    return ok && elapsed < 10.0;
}

// 3. R > 0.9 at both resonance voltages for the 0.1 K / 10 K pair
bool criterion_diode(std::string& note) {
    bool ok = true;
    std::string detail;
    for (double vp : resonance_voltages()) {
        const RectificationResult r = rectification(
            default_device(), {0.1, kGamma3}, {10.0, kGamma3}, vp);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "R(%.2fV)=%.4f ", vp, r.r);
        detail += buf;
        ok = ok && r.defined && r.r > 0.9;
    }
    note = detail;
    return ok;
}

// 4. the fully symmetric device does not rectify anywhere
bool criterion_symmetry_null(std::string& note) {
    const auto rows = run_scenario(preset_scenario(Preset::Fig9a));
    double worst_r = 0.0, worst_balance = 0.0;
    for (const SweepRow& row : rows) {
        if (row.r_defined) worst_r = std::fmax(worst_r, std::fabs(row.r_factor));
        const double scale =
            std::fmax(std::fabs(row.q_forward), std::fabs(row.q_reverse));
        if (scale > 0.0) {
            worst_balance = std::fmax(
                worst_balance, std::fabs(row.q_forward + row.q_reverse) / scale);
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "max|R|=%.2e, max rel |qf+qr|=%.2e", worst_r,
                  worst_balance);
    note = buf;
    return worst_r < 1e-9 && worst_balance < 1e-9;
}

// 5. energy conservation and unit trace on every preset row
bool criterion_conservation(std::string& note) {
    double worst_res = 0.0, worst_trace = 0.0;
    long rows_checked = 0;
    for (const Scenario& s : all_preset_scenarios()) {
        for (const SweepRow& row : run_scenario(s)) {
            ++rows_checked;
            // |q_L + q_R| relative to the larger current; rows at the noise
            // floor (sub-1e-12 GHz^2 currents) are conserved trivially
            const double scale = std::fmax(std::fabs(row.q_forward), 1e-12);
            worst_res = std::fmax(worst_res, row.residual_forward / scale);
            if (row.has_reverse) {
                const double rscale = std::fmax(std::fabs(row.q_reverse), 1e-12);
                worst_res = std::fmax(worst_res, row.residual_reverse / rscale);
            }
            double sum_f = 0.0, sum_r = 0.0;
            for (int i = 0; i < 4; ++i) {
                sum_f += row.rho_forward[i];
                sum_r += row.rho_reverse[i];
            }
            worst_trace = std::fmax(worst_trace, std::fabs(sum_f - 1.0));
            if (row.has_reverse) {
                worst_trace = std::fmax(worst_trace, std::fabs(sum_r - 1.0));
            }
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "%ld rows, max rel residual=%.2e, max |trace-1|=%.2e",
                  rows_checked, worst_res, worst_trace);
    note = buf;
    return worst_res <= 1e-9 && worst_trace <= 1e-12;
}

// 6. equal bath temperatures produce the Gibbs state and no current
bool criterion_gibbs(std::string& note) {
    std::mt19937_64 rng(20240809);
    std::uniform_real_distribution<double> vp_dist(-60.0, 40.0);
    double worst_pop = 0.0, worst_q = 0.0;
    for (double t_k : {0.1, 1.0, 10.0}) {
        for (int i = 0; i < 20; ++i) {
            const double vp = vp_dist(rng);
            const HeatReport report = solve_transport(
                default_device(), {t_k, kGamma3}, {t_k, kGamma3}, vp);
            const Vec4 eps = dress(default_device(), vp).eps;
            const double t_ghz = kelvin_to_ghz(t_k);
            double z = 0.0;
            Vec4 gibbs{};
            for (int k = 0; k < 4; ++k) {
                gibbs[k] = std::exp(-(eps[k] - eps[0]) / t_ghz);
                z += gibbs[k];
            }
            for (int k = 0; k < 4; ++k) {
                worst_pop = std::fmax(
                    worst_pop, std::fabs(report.populations.rho[k] - gibbs[k] / z));
            }
            worst_q = std::fmax(
                worst_q, std::fmax(std::fabs(report.q_left), std::fabs(report.q_right)));
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "max pop dev=%.2e, max |q|=%.2e", worst_pop,
                  worst_q);
    note = buf;
    return worst_pop < 1e-8 && worst_q < 1e-12;
}

// 7. closed-form and null-space solvers agree; the dissipator projection
//    rebuilds the generator
bool criterion_oracles(std::string& note) {
    const double t0 = now_seconds();
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100000; ++trial) {
        ChannelRates rates{};
        for (int mu = 0; mu < 2; ++mu) {
            for (int l = 0; l < kNumChannels; ++l) {
                rates.down[mu][l] = rate(rng);
                rates.up[mu][l] = rate(rng);
            }
        }
        Mat4 total{};
        const Mat4 ml = rate_matrix(rates, Reservoir::Left).m;
        const Mat4 mr = rate_matrix(rates, Reservoir::Right).m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) total[i][j] = ml[i][j] + mr[i][j];
        const Populations direct = steady_state(total);
        const Populations closed = steady_state_closed_form(rates);
        for (int i = 0; i < 4; ++i) {
            const double dev = std::fabs(direct.rho[i] - closed.rho[i]) /
                               (std::fabs(closed.rho[i]) + 1e-15);
            worst = std::fmax(worst, dev);
        }
    }
    if (worst >= 1e-10) {
        note = "solver vs closed form rel dev " + std::to_string(worst);
        return false;
    }

    std::uniform_real_distribution<double> vp_dist(-60.0, 60.0);
    std::uniform_real_distribution<double> temp(0.05, 10.0);
    std::uniform_real_distribution<double> gam(1e-3, 0.1);
    double worst_m = 0.0;
    int tested = 0;
    while (tested < 200) {
        const DeviceParams device = oracles::random_device_params(rng);
        const double vp = vp_dist(rng);
        const DressedSpectrum s = dress(device, vp);
        if (oracles::min_level_gap(s.eps) < 1e-5) continue;
        ++tested;
        const TransitionTable table = transition_table(s);
        const JumpTable jumps = jump_table(s);
        const ReservoirParams left{temp(rng), gam(rng)};
        const ReservoirParams right{temp(rng), gam(rng)};
        const ChannelRates rates = channel_rates(table, jumps, left, right);
        const auto num = oracles::diagonalize(device, vp);
        const auto label = oracles::match_labels(s.eps, num.evals);
        const Mat4 ref_l = oracles::dissipator_population_matrix(
            num, label, num.coupling_left, left.gamma, left.temperature_k);
        const Mat4 ref_r = oracles::dissipator_population_matrix(
            num, label, num.coupling_right, right.gamma, right.temperature_k);
        const Mat4 got_l = rate_matrix(rates, Reservoir::Left).m;
        const Mat4 got_r = rate_matrix(rates, Reservoir::Right).m;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                worst_m = std::fmax(worst_m, std::fabs(got_l[i][j] - ref_l[i][j]));
                worst_m = std::fmax(worst_m, std::fabs(got_r[i][j] - ref_r[i][j]));
            }
        }
    }
    const double elapsed = now_seconds() - t0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "1e5 draws, max rel dev=%.2e; dissipator max dev=%.2e (%.1f s)",
                  worst, worst_m, elapsed);
    note = buf;
    return worst_m < 1e-10 && elapsed < 60.0;
}

// 8. |q_forward| is nondecreasing in the hot-bath temperature
bool criterion_monotonic_bias(std::string& note) {
    const double voltages[5] = {-50.0, -40.25, -10.0, 13.87, 30.0};
    for (double vp : voltages) {
        double prev = -1.0;
        for (double t_hot : {0.5, 1.0, 5.0, 10.0}) {
            const HeatReport report = solve_transport(
                default_device(), {0.1, kGamma3}, {t_hot, kGamma3}, vp);
            const double q = std::fabs(report.q_right);
            if (q < prev * (1.0 - 1e-12)) {
                char buf[120];
                std::snprintf(buf, sizeof(buf),
                              "not monotone at V_p=%.2f, T_hot=%.1f", vp, t_hot);
                note = buf;
                return false;
            }
            prev = q;
        }
    }
    note = "5 voltages x 4 temperatures";
    return true;
}

// 9. tenfold right-bath coupling beats the symmetric coupling nearly everywhere
bool criterion_coupling_enhancement(std::string& note) {
    const auto variants = preset_variants(Preset::Fig4);
    const Scenario* ratio1 = nullptr;
    const Scenario* ratio10 = nullptr;
    for (const auto& [stem, s] : variants) {
        if (stem.find("ratio1") != std::string::npos &&
            stem.find("ratio10") == std::string::npos) {
            ratio1 = &s;
        }
        if (stem.find("ratio10") != std::string::npos) ratio10 = &s;
    }
    if (ratio1 == nullptr || ratio10 == nullptr) {
        note = "fig4 variants missing";
        return false;
    }
    const auto rows1 = run_scenario(*ratio1);
    const auto rows10 = run_scenario(*ratio10);
    int wins = 0;
    for (size_t i = 0; i < rows1.size(); ++i) {
        if (std::fabs(rows10[i].q_forward) > std::fabs(rows1[i].q_forward)) {
            ++wins;
        }
    }
    const double frac = static_cast<double>(wins) / rows1.size();
    char buf[96];
    std::snprintf(buf, sizeof(buf), "|q|(10 gamma) larger on %.1f%% of the grid",
                  100.0 * frac);
    note = buf;
    return frac >= 0.95;
}

// 10. the truncated low-temperature model tracks the exact current at 5/10 mK
bool criterion_lowtemp(std::string& note) {
    std::vector<double> grid;
    grid.reserve(1001);
    for (int i = 0; i <= 1000; ++i) grid.push_back(-60.0 + 0.1 * i);
    const auto rows = compare_exact_approx(
        default_device(), {0.005, kGamma3}, {0.010, kGamma3}, grid);
    double max_exact = 0.0;
    for (const auto& row : rows)
        max_exact = std::fmax(max_exact, std::fabs(row.q_exact_forward));
    std::vector<double> devs;
    int sign_mismatch = 0;
    for (const auto& row : rows) {
        if (std::fabs(row.q_exact_forward) <= 0.01 * max_exact) continue;
        if (row.q_approx_forward * row.q_exact_forward <= 0.0) ++sign_mismatch;
        devs.push_back(row.rel_dev_forward);
    }
    std::sort(devs.begin(), devs.end());
    const double median = devs.empty() ? 1e300 : devs[devs.size() / 2];
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "%zu points above 1%%, sign mismatches=%d, median dev=%.4f",
                  devs.size(), sign_mismatch, median);
    note = buf;
    return !devs.empty() && sign_mismatch == 0 && median < 0.15;
}

// 11. heat always flows from hot to cold on every preset row
bool criterion_second_law(std::string& note) {
    long rows_checked = 0;
    for (const Scenario& s : all_preset_scenarios()) {
        const double t_cold = s.left.temperature_k;
        for (const SweepRow& row : run_scenario(s)) {
            ++rows_checked;
            const double t_hot = (s.axis == SweepAxis::HotTemperature)
                                     ? row.axis
                                     : s.right.temperature_k;
            if ((t_hot - t_cold) * row.q_forward < 0.0) {
                char buf[120];
                std::snprintf(buf, sizeof(buf),
                              "violated on %s at axis=%.3f (forward)",
                              s.preset.c_str(), row.axis);
                note = buf;
                return false;
            }
            if (row.has_reverse && (t_cold - t_hot) * row.q_reverse < 0.0) {
                char buf[120];
                std::snprintf(buf, sizeof(buf),
                              "violated on %s at axis=%.3f (reverse)",
                              s.preset.c_str(), row.axis);
                note = buf;
                return false;
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%ld rows", rows_checked);
    note = buf;
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "resonance landmarks", criterion_resonance},
        {2, "valve maxima at resonance", criterion_valve_maxima},
        {3, "near-perfect diode (R > 0.9)", criterion_diode},
        {4, "symmetry null", criterion_symmetry_null},
        {5, "conservation suite", criterion_conservation},
        {6, "equilibrium Gibbs", criterion_gibbs},
        {7, "oracle equivalence", criterion_oracles},
        {8, "monotonic bias", criterion_monotonic_bias},
        {9, "asymmetric-coupling enhancement", criterion_coupling_enhancement},
        {10, "low-temperature oracle", criterion_lowtemp},
        {11, "second law", criterion_second_law},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.label,
                    note.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu acceptance criteria failed\n", failures,
                    criteria.size());
    } else {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    }
    return failures == 0 ? 0 : 1;
}
