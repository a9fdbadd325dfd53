#include "strainheat/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "strainheat/sweep.hpp"
#include "strainheat/units.hpp"

namespace strainheat {

namespace {

void write_scenario_outputs(const Scenario& scenario,
                            const std::vector<SweepRow>& rows,
                            const std::string& csv_path) {
    emit_csv(rows, csv_path);
    const std::filesystem::path base(csv_path);
    auto side_path = [&](const char* suffix) {
        std::filesystem::path p = base;
        p.replace_extension();
        return p.string() + suffix;
    };
    auto write_side = [&](const std::string& path, auto&& emitter) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        emitter(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path);
    };
    if (scenario.mode == SweepMode::Fluxes) {
        write_side(side_path("_fluxes_forward.csv"),
                   [&](std::ostream& o) { emit_flux_csv(rows, false, o); });
        write_side(side_path("_fluxes_reverse.csv"),
                   [&](std::ostream& o) { emit_flux_csv(rows, true, o); });
    }
    if (scenario.mode == SweepMode::LowTempCompare) {
        write_side(side_path("_lowtemp.csv"),
                   [&](std::ostream& o) { emit_lowtemp_csv(rows, o); });
    }
}

int run_sweep(const std::string& config_path, const std::string& out_path,
              int threads) {
    const Scenario scenario = load_config(config_path);
    const std::vector<SweepRow> rows = run_scenario(scenario, threads);
    write_scenario_outputs(scenario, rows, out_path);
    std::cout << out_path << ": " << rows.size() << " rows\n";
    return 0;
}

int run_reproduce(const std::string& preset_id, const std::string& out_dir,
                  int threads) {
    const Preset preset = parse_preset(preset_id);
    std::filesystem::create_directories(out_dir);
    for (const auto& [stem, scenario] : preset_variants(preset)) {
        const std::vector<SweepRow> rows = run_scenario(scenario, threads);
        const std::string path =
            (std::filesystem::path(out_dir) / (stem + ".csv")).string();
        write_scenario_outputs(scenario, rows, path);
        std::cout << path << ": " << rows.size() << " rows\n";
    }
    return 0;
}

int run_resonance(double vp_min, double vp_max, int grid) {
    const ResonanceScan scan =
        find_resonances(default_device(), vp_min, vp_max, grid);
    if (scan.always_resonant) {
        std::cout << "omega_L = omega_R over the whole range ["
                  << vp_min << ", " << vp_max << "] V\n";
        return 0;
    }
    if (scan.voltages.empty()) {
        std::cout << "no resonance in [" << vp_min << ", " << vp_max << "] V\n";
        return 0;
    }
    for (double vp : scan.voltages) {
        const DressedSpectrum s = dress(default_device(), vp);
        std::printf("V_p = %.4f V  (omega = %.6f GHz)\n", vp, s.omega_left);
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Heat valve and diode simulator for two strain-tuned "
                 "coupled two-level defects"};
    app.require_subcommand(1);
    int threads = 0;

    auto* sweep = app.add_subcommand("sweep", "Run a configured sweep");
    std::string config_path, out_path;
    sweep->add_option("--config", config_path, "Scenario config file")
        ->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--threads", threads, "Worker threads (0 = auto)");

    auto* reproduce =
        app.add_subcommand("reproduce", "Run a figure preset into a directory");
    std::string preset_id, out_dir;
    reproduce->add_option("preset", preset_id, "fig2..fig8, fig9a..fig9d")
        ->required();
    reproduce->add_option("--out", out_dir, "Output directory")->required();
    reproduce->add_option("--threads", threads, "Worker threads (0 = auto)");

    auto* resonance = app.add_subcommand(
        "resonance", "Locate omega_L = omega_R voltages of the default device");
    double vp_min = -60.0, vp_max = 40.0;
    int grid = 2001;
    resonance->add_option("--vp-min", vp_min, "Scan start, V");
    resonance->add_option("--vp-max", vp_max, "Scan end, V");
    resonance->add_option("--grid", grid, "Scan grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sweep->parsed()) return run_sweep(config_path, out_path, threads);
        if (reproduce->parsed())
            return run_reproduce(preset_id, out_dir, threads);
        return run_resonance(vp_min, vp_max, grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace strainheat
