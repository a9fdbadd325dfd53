#include "strainheat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "strainheat/units.hpp"

namespace strainheat {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int default_thread_count() {
    if (const char* env = std::getenv("STRAINHEAT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double axis_value(const Scenario& s, int index) {
    return s.axis_min +
           index * (s.axis_max - s.axis_min) / (s.axis_steps - 1);
}

SweepRow evaluate_point(const Scenario& s, double axis) {
    ReservoirParams fwd_left = s.left;
    ReservoirParams fwd_right = s.right;
    double vp = axis;
    if (s.axis == SweepAxis::HotTemperature) {
        vp = s.vp_fixed;
        fwd_right.temperature_k = axis;
    }
    ReservoirParams rev_left = fwd_left;
    ReservoirParams rev_right = fwd_right;
    std::swap(rev_left.temperature_k, rev_right.temperature_k);

    const DressedSpectrum spectrum = dress(s.device, vp);

    SweepRow row;
    row.axis = axis;
    row.omega_left = spectrum.omega_left;
    row.omega_right = spectrum.omega_right;
    const TransitionTable table = transition_table(spectrum);
    for (int l = 0; l < kNumChannels; ++l) {
        row.channel_energy[l] = table.channels[l].energy;
    }

    const HeatReport forward = solve_transport(s.device, fwd_left, fwd_right, vp);
    row.rho_forward = forward.populations.rho;
    row.q_forward = forward.q_right;
    row.residual_forward = forward.residual;
    row.flux_forward = forward.fluxes;

    if (s.mode == SweepMode::ForwardOnly) return row;

    const HeatReport reverse = solve_transport(s.device, rev_left, rev_right, vp);
    row.has_reverse = true;
    row.rho_reverse = reverse.populations.rho;
    row.q_reverse = reverse.q_right;
    row.residual_reverse = reverse.residual;
    row.flux_reverse = reverse.fluxes;

    const RectificationResult rect =
        rectification_from(row.q_forward, row.q_reverse);
    row.r_defined = rect.defined;
    row.r_factor = rect.r;

    if (s.mode == SweepMode::LowTempCompare) {
        const JumpTable jumps = jump_table(spectrum);
        const LowTempModel fwd_model =
            lowtemp_generator(spectrum, table, jumps, fwd_left, fwd_right);
        const LowTempModel rev_model =
            lowtemp_generator(spectrum, table, jumps, rev_left, rev_right);
        row.q_approx_forward = lowtemp_heat_current(fwd_model);
        row.q_approx_reverse = lowtemp_heat_current(rev_model);
        row.lowtemp_in_regime = fwd_model.in_regime;
    }
    return row;
}

}  // namespace

void validate(const Scenario& scenario) {
    validate(scenario.device);
    validate(scenario.left);
    validate(scenario.right);
    if (scenario.axis_steps < 2) {
        throw ConfigError("axis_steps must be >= 2");
    }
    if (!(scenario.axis_min < scenario.axis_max)) {
        throw ConfigError("axis_min must be < axis_max");
    }
}

std::vector<SweepRow> run_scenario(const Scenario& scenario, int n_threads) {
    validate(scenario);
    const int n = scenario.axis_steps;
    const int workers =
        std::min(n_threads > 0 ? n_threads : default_thread_count(), n);

    std::vector<SweepRow> rows(n);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const int i = next.fetch_add(1);
            if (i >= n) break;
            const double axis = axis_value(scenario, i);
            try {
                rows[i] = evaluate_point(scenario, axis);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "sweep failed at axis value " +
                                    format_double(axis) + ": " + e.what();
                }
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error(error_message);
    return rows;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "axis,omega_l_ghz,omega_r_ghz,"
           "rho11_f,rho22_f,rho33_f,rho44_f,"
           "rho11_r,rho22_r,rho33_r,rho44_r,"
           "q_forward,q_reverse,r_factor,residual_f,residual_r"
           " # q in GHz^2; 1 GHz^2 = 6.62607e-16 W\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.axis) << ',' << format_double(row.omega_left)
            << ',' << format_double(row.omega_right);
        for (double r : row.rho_forward) out << ',' << format_double(r);
        if (row.has_reverse) {
            for (double r : row.rho_reverse) out << ',' << format_double(r);
        } else {
            out << ",,,,";
        }
        out << ',' << format_double(row.q_forward);
        out << ',' << (row.has_reverse ? format_double(row.q_reverse) : "");
        out << ',' << (row.r_defined ? format_double(row.r_factor) : "");
        out << ',' << format_double(row.residual_forward);
        out << ',' << (row.has_reverse ? format_double(row.residual_reverse) : "");
        out << '\n';
    }
}

namespace {

void write_file(const std::string& path, const std::vector<SweepRow>& rows,
                void (*emitter)(const std::vector<SweepRow>&, std::ostream&)) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    emitter(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    write_file(path, rows, &emit_csv);
}

void emit_flux_csv(const std::vector<SweepRow>& rows, bool reverse,
                   std::ostream& out) {
    out << "axis";
    for (int l = 1; l <= kNumChannels; ++l) out << ",omega_" << l << "_ghz";
    for (int l = 1; l <= kNumChannels; ++l) out << ",phi_l" << l;
    for (int l = 1; l <= kNumChannels; ++l) out << ",phi_r" << l;
    out << '\n';
    for (const SweepRow& row : rows) {
        const FluxTable& flux = reverse ? row.flux_reverse : row.flux_forward;
        out << format_double(row.axis);
        for (double w : row.channel_energy) out << ',' << format_double(w);
        for (int mu = 0; mu < 2; ++mu) {
            for (int l = 0; l < kNumChannels; ++l) {
                out << ',' << format_double(flux.phi[mu][l]);
            }
        }
        out << '\n';
    }
}

void emit_lowtemp_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "axis,q_exact_f,q_approx_f,rel_dev_f,"
           "q_exact_r,q_approx_r,rel_dev_r,in_regime\n";
    auto rel = [](double approx, double exact) -> std::string {
        if (exact == 0.0) return approx == 0.0 ? "0" : "";
        return format_double(std::fabs(approx - exact) / std::fabs(exact));
    };
    for (const SweepRow& row : rows) {
        out << format_double(row.axis) << ',' << format_double(row.q_forward)
            << ',' << format_double(row.q_approx_forward) << ','
            << rel(row.q_approx_forward, row.q_forward) << ','
            << format_double(row.q_reverse) << ','
            << format_double(row.q_approx_reverse) << ','
            << rel(row.q_approx_reverse, row.q_reverse) << ','
            << (row.lowtemp_in_regime ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Presets

DeviceParams default_device() {
    // Delta_L = 7.5 GHz, Delta_R = 1.3 GHz; eps_L = 0.005 V_p - 3.3,
    // eps_R = 0.3 (V_p + 13); g = 850 MHz.
    return DeviceParams{
        DefectParams{7.5, 0.005, -3.3},
        DefectParams{1.3, 0.3, 3.9},
        0.85,
    };
}

namespace {

// Fully symmetric device: both defects carry the right-defect parameters.
DeviceParams symmetric_device() {
    DeviceParams device = default_device();
    device.left = device.right;
    return device;
}

Scenario base_scenario() {
    Scenario s;
    s.device = default_device();
    s.left = {0.1, gamma_from_mhz_over_2pi(3.0)};
    s.right = {10.0, gamma_from_mhz_over_2pi(3.0)};
    s.axis = SweepAxis::PiezoVoltage;
    s.axis_min = -60.0;
    s.axis_max = 40.0;
    s.axis_steps = 1001;
    s.vp_fixed = 13.9;
    s.mode = SweepMode::ForwardReverseR;
    return s;
}

Scenario with_gammas(Scenario s, double gamma_l_mhz_over_2pi, double ratio) {
    s.left.gamma = gamma_from_mhz_over_2pi(gamma_l_mhz_over_2pi);
    s.right.gamma = ratio * s.left.gamma;
    return s;
}

Scenario with_temps(Scenario s, double t_cold, double t_hot) {
    s.left.temperature_k = t_cold;
    s.right.temperature_k = t_hot;
    return s;
}

}  // namespace

Scenario preset_scenario(Preset preset) {
    Scenario s = base_scenario();
    switch (preset) {
        case Preset::Fig2:
            // Spectrum sweep; temperatures are not part of the figure, a
            // nominal 0.1/1 K pair keeps the run meaningful.
            s = with_temps(s, 0.1, 1.0);
            s.mode = SweepMode::ForwardOnly;
            break;
        case Preset::Fig3:
            // T_hot 10 K is the large-bias curve; reproduce emits all four.
            s = with_temps(s, 0.1, 10.0);
            break;
        case Preset::Fig4:
            s = with_temps(with_gammas(s, 1.0, 5.0), 0.1, 3.0);
            // The figure quotes the same temperature pair for both transfer
            // directions; the reverse run uses the exchanged pair as usual.
            break;
        case Preset::Fig5:
            s = with_temps(with_gammas(s, 1.0, 5.0), 0.1, 5.0);
            s.mode = SweepMode::Populations;
            break;
        case Preset::Fig6:
            s = with_temps(s, 0.1, 10.0);
            s.axis = SweepAxis::HotTemperature;
            s.axis_min = 0.1;
            s.axis_max = 10.0;
            s.vp_fixed = 13.9;
            break;
        case Preset::Fig7:
            s = with_temps(s, 0.1, 5.0);
            s.mode = SweepMode::Fluxes;
            break;
        case Preset::Fig8:
            s = with_temps(s, 0.005, 0.010);
            s.mode = SweepMode::LowTempCompare;
            break;
        case Preset::Fig9a:
            s = with_temps(s, 0.1, 0.5);
            s.device = symmetric_device();
            break;
        case Preset::Fig9b:
            s = with_temps(s, 0.1, 0.5);
            break;
        case Preset::Fig9c:
            s = with_temps(s, 0.1, 0.5);
            s.device = symmetric_device();
            s.right.gamma = 10.0 * s.left.gamma;
            break;
        case Preset::Fig9d:
            s = with_temps(s, 0.1, 0.5);
            s.right.gamma = 10.0 * s.left.gamma;
            break;
    }
    s.preset = preset_name(preset);
    return s;
}

std::vector<std::pair<std::string, Scenario>> preset_variants(Preset preset) {
    std::vector<std::pair<std::string, Scenario>> out;
    auto add = [&](const std::string& stem, Scenario s) {
        out.emplace_back(stem, std::move(s));
    };
    switch (preset) {
        case Preset::Fig3:
            for (double t_hot : {0.5, 1.0, 5.0, 10.0}) {
                std::ostringstream stem;
                stem << "fig3_thot" << t_hot << "K";
                add(stem.str(), with_temps(preset_scenario(preset), 0.1, t_hot));
            }
            break;
        case Preset::Fig4:
            for (double ratio : {1.0, 5.0, 10.0}) {
                Scenario s = preset_scenario(preset);
                s.right.gamma = ratio * s.left.gamma;
                std::ostringstream stem;
                stem << "fig4_ratio" << ratio;
                add(stem.str(), s);
            }
            break;
        case Preset::Fig6:
            for (double vp : {-40.3, -13.0, 13.9}) {
                Scenario s = preset_scenario(preset);
                s.vp_fixed = vp;
                std::ostringstream stem;
                stem << "fig6_vp" << vp << "V";
                add(stem.str(), s);
            }
            break;
        default:
            add(preset_name(preset), preset_scenario(preset));
            break;
    }
    return out;
}

const char* preset_name(Preset preset) {
    switch (preset) {
        case Preset::Fig2: return "fig2";
        case Preset::Fig3: return "fig3";
        case Preset::Fig4: return "fig4";
        case Preset::Fig5: return "fig5";
        case Preset::Fig6: return "fig6";
        case Preset::Fig7: return "fig7";
        case Preset::Fig8: return "fig8";
        case Preset::Fig9a: return "fig9a";
        case Preset::Fig9b: return "fig9b";
        case Preset::Fig9c: return "fig9c";
        case Preset::Fig9d: return "fig9d";
    }
    return "?";
}

Preset parse_preset(const std::string& name) {
    static const std::map<std::string, Preset> table = {
        {"fig2", Preset::Fig2},   {"fig3", Preset::Fig3},
        {"fig4", Preset::Fig4},   {"fig5", Preset::Fig5},
        {"fig6", Preset::Fig6},   {"fig7", Preset::Fig7},
        {"fig8", Preset::Fig8},   {"fig9a", Preset::Fig9a},
        {"fig9b", Preset::Fig9b}, {"fig9c", Preset::Fig9c},
        {"fig9d", Preset::Fig9d},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown preset: " + name);
    return it->second;
}

// ---------------------------------------------------------------------------
// Config files

namespace {

struct RawConfig {
    std::map<std::string, std::pair<std::string, int>> values;  // key -> (value, line)
};

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

RawConfig parse_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RawConfig raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected `key = value`");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected `key = value`");
        }
        raw.values[key] = {value, lineno};  // last occurrence wins
    }
    return raw;
}

const std::array<const char*, 18> kKnownKeys = {
    "delta_l_ghz", "delta_r_ghz", "c_l_ghz_per_v", "c_r_ghz_per_v",
    "eps0_l_ghz",  "eps0_r_ghz",  "g_ghz",         "gamma_l_over_2pi_mhz",
    "gamma_ratio", "t_cold_k",    "t_hot_k",       "axis",
    "axis_min",    "axis_max",    "axis_steps",    "mode",
    "preset",      "vp_v",
};

double parse_number(const RawConfig& raw, const std::string& key) {
    const auto& [text, lineno] = raw.values.at(key);
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(lineno) + ": key `" + key +
                          "`: cannot parse value `" + text + "`");
    }
}

SweepAxis parse_axis(const std::string& text, int lineno) {
    if (text == "piezo_voltage") return SweepAxis::PiezoVoltage;
    if (text == "hot_temperature") return SweepAxis::HotTemperature;
    throw ConfigError("line " + std::to_string(lineno) +
                      ": key `axis`: expected piezo_voltage or "
                      "hot_temperature, got `" + text + "`");
}

SweepMode parse_mode(const std::string& text, int lineno) {
    if (text == "forward_only") return SweepMode::ForwardOnly;
    if (text == "forward_reverse_r") return SweepMode::ForwardReverseR;
    if (text == "lowtemp_compare") return SweepMode::LowTempCompare;
    if (text == "populations") return SweepMode::Populations;
    if (text == "fluxes") return SweepMode::Fluxes;
    throw ConfigError("line " + std::to_string(lineno) +
                      ": key `mode`: unknown mode `" + text + "`");
}

}  // namespace

Scenario load_config(const std::string& path) {
    const RawConfig raw = parse_key_values(path);

    for (const auto& [key, value] : raw.values) {
        if (std::find_if(kKnownKeys.begin(), kKnownKeys.end(),
                         [&](const char* k) { return key == k; }) ==
            kKnownKeys.end()) {
            throw ConfigError("line " + std::to_string(value.second) +
                              ": unknown key `" + key + "`");
        }
    }

    Scenario s;
    const bool has_preset = raw.values.count("preset") > 0;
    if (has_preset) {
        const auto& [name, lineno] = raw.values.at("preset");
        try {
            s = preset_scenario(parse_preset(name));
        } catch (const ConfigError&) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": unknown preset `" + name + "`");
        }
    } else {
        s = base_scenario();
        s.preset.clear();
        for (const char* key : kKnownKeys) {
            const std::string k = key;
            if (k == "preset" || k == "vp_v") continue;  // optional
            if (!raw.values.count(k)) {
                throw ConfigError("missing required key `" + k + "`");
            }
        }
    }

    auto has = [&](const char* key) { return raw.values.count(key) > 0; };
    if (has("delta_l_ghz")) s.device.left.delta = parse_number(raw, "delta_l_ghz");
    if (has("delta_r_ghz")) s.device.right.delta = parse_number(raw, "delta_r_ghz");
    if (has("c_l_ghz_per_v")) s.device.left.slope = parse_number(raw, "c_l_ghz_per_v");
    if (has("c_r_ghz_per_v")) s.device.right.slope = parse_number(raw, "c_r_ghz_per_v");
    if (has("eps0_l_ghz")) s.device.left.offset = parse_number(raw, "eps0_l_ghz");
    if (has("eps0_r_ghz")) s.device.right.offset = parse_number(raw, "eps0_r_ghz");
    if (has("g_ghz")) s.device.g = parse_number(raw, "g_ghz");
    if (has("gamma_l_over_2pi_mhz") || has("gamma_ratio")) {
        // Re-derive both gammas so a ratio override also applies on presets.
        double gamma_l = s.left.gamma;
        double ratio = s.left.gamma > 0.0 ? s.right.gamma / s.left.gamma : 1.0;
        if (has("gamma_l_over_2pi_mhz")) {
            gamma_l = gamma_from_mhz_over_2pi(parse_number(raw, "gamma_l_over_2pi_mhz"));
        }
        if (has("gamma_ratio")) ratio = parse_number(raw, "gamma_ratio");
        s.left.gamma = gamma_l;
        s.right.gamma = ratio * gamma_l;
    }
    if (has("t_cold_k")) s.left.temperature_k = parse_number(raw, "t_cold_k");
    if (has("t_hot_k")) s.right.temperature_k = parse_number(raw, "t_hot_k");
    if (has("axis")) {
        const auto& [text, lineno] = raw.values.at("axis");
        s.axis = parse_axis(text, lineno);
    }
    if (has("axis_min")) s.axis_min = parse_number(raw, "axis_min");
    if (has("axis_max")) s.axis_max = parse_number(raw, "axis_max");
    if (has("axis_steps")) {
        const double v = parse_number(raw, "axis_steps");
        s.axis_steps = static_cast<int>(v);
        if (s.axis_steps != v) {
            throw ConfigError("line " +
                              std::to_string(raw.values.at("axis_steps").second) +
                              ": key `axis_steps`: expected an integer");
        }
    }
    if (has("mode")) {
        const auto& [text, lineno] = raw.values.at("mode");
        s.mode = parse_mode(text, lineno);
    }
    if (has("vp_v")) s.vp_fixed = parse_number(raw, "vp_v");

    validate(s);
    return s;
}

}  // namespace strainheat
