// sweep.hpp — scenario configuration, grid sweep engine, figure presets and
// the CSV emitters.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strainheat/lowtemp.hpp"
#include "strainheat/rates.hpp"
#include "strainheat/spectrum.hpp"
#include "strainheat/steady_state.hpp"

namespace strainheat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepAxis { PiezoVoltage, HotTemperature };

enum class SweepMode {
    ForwardOnly,      // forward orientation only; reverse columns left empty
    ForwardReverseR,  // both orientations plus rectification factor
    LowTempCompare,   // both orientations, plus truncated-model comparison
    Populations,      // alias for ForwardReverseR (populations are always emitted)
    Fluxes,           // both orientations, per-channel flux tables retained
};

// Figure presets; each fixes the device, bath and grid parameters.
enum class Preset {
    Fig2, Fig3, Fig4, Fig5, Fig6, Fig7, Fig8,
    Fig9a, Fig9b, Fig9c, Fig9d,
};

struct Scenario {
    DeviceParams device;
    ReservoirParams left;    // forward orientation: left = cold bath
    ReservoirParams right;   // forward orientation: right = hot bath
    SweepAxis axis = SweepAxis::PiezoVoltage;
    double axis_min = -60.0;
    double axis_max = 40.0;
    int axis_steps = 1001;
    double vp_fixed = 13.9;  // piezo voltage used when axis == HotTemperature
    SweepMode mode = SweepMode::ForwardReverseR;
    std::string preset;      // originating preset id, empty for custom runs
};

void validate(const Scenario& scenario);

struct SweepRow {
    double axis;
    double omega_left;
    double omega_right;
    Vec4 rho_forward;
    Vec4 rho_reverse;
    bool has_reverse = false;
    double q_forward = 0.0;
    double q_reverse = 0.0;
    double r_factor = 0.0;
    bool r_defined = false;
    double residual_forward = 0.0;
    double residual_reverse = 0.0;
    // Mode Fluxes
    FluxTable flux_forward{};
    FluxTable flux_reverse{};
    std::array<double, kNumChannels> channel_energy{};
    // Mode LowTempCompare
    double q_approx_forward = 0.0;
    double q_approx_reverse = 0.0;
    bool lowtemp_in_regime = false;
};

// Evaluate every grid point, in axis order. Points are distributed over a
// bounded worker pool; the output is deterministic (byte-identical CSV)
// regardless of the thread count. n_threads <= 0 picks the default
// (STRAINHEAT_THREADS env var, else hardware concurrency).
// A solver failure aborts the run, reporting the offending axis value.
std::vector<SweepRow> run_scenario(const Scenario& scenario, int n_threads = 0);

// Canonical CSV: a fixed 16-column schema, one row per sweep point, floats
// with 17 significant digits, undefined/inapplicable fields empty.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);

// Side tables for the Fluxes and LowTempCompare modes.
void emit_flux_csv(const std::vector<SweepRow>& rows, bool reverse,
                   std::ostream& out);
void emit_lowtemp_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// Flat "key = value" configuration file (# comments). A `preset` key fills
// all defaults from the corresponding figure; explicit keys override.
// Errors name the key and line number.
Scenario load_config(const std::string& path);

Scenario preset_scenario(Preset preset);

// A figure may expand to several scenarios (one per plotted curve); each
// comes with a filename stem. `reproduce` writes one CSV per entry.
std::vector<std::pair<std::string, Scenario>> preset_variants(Preset preset);

const char* preset_name(Preset preset);
Preset parse_preset(const std::string& name);  // throws ConfigError

// Paper-style device and defaults shared by every preset.
DeviceParams default_device();

}  // namespace strainheat
