// module.cpp — pybind11 bindings exposing the core operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "strainheat/lowtemp.hpp"
#include "strainheat/rates.hpp"
#include "strainheat/spectrum.hpp"
#include "strainheat/steady_state.hpp"
#include "strainheat/sweep.hpp"
#include "strainheat/units.hpp"

namespace py = pybind11;
using namespace strainheat;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Steady-state heat transport through two strain-tuned coupled "
              "two-level defects";

    m.attr("KELVIN_GHZ") = kKelvinGhz;
    m.attr("GHZ_SQUARED_WATT") = kGhzSquaredWatt;
    m.def("kelvin_to_ghz", &kelvin_to_ghz, py::arg("t_kelvin"));
    m.def("gamma_from_mhz_over_2pi", &gamma_from_mhz_over_2pi, py::arg("mhz"));

    py::register_exception<SingularGeneratorError>(m, "SingularGeneratorError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::enum_<Reservoir>(m, "Reservoir")
        .value("LEFT", Reservoir::Left)
        .value("RIGHT", Reservoir::Right);

    py::class_<DefectParams>(m, "DefectParams")
        .def(py::init<double, double, double>(), py::arg("delta"),
             py::arg("slope"), py::arg("offset"))
        .def_readwrite("delta", &DefectParams::delta)
        .def_readwrite("slope", &DefectParams::slope)
        .def_readwrite("offset", &DefectParams::offset);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<DefectParams, DefectParams, double>(), py::arg("left"),
             py::arg("right"), py::arg("g"))
        .def_readwrite("left", &DeviceParams::left)
        .def_readwrite("right", &DeviceParams::right)
        .def_readwrite("g", &DeviceParams::g);

    py::class_<ReservoirParams>(m, "ReservoirParams")
        .def(py::init<double, double>(), py::arg("temperature_k"),
             py::arg("gamma"))
        .def_readwrite("temperature_k", &ReservoirParams::temperature_k)
        .def_readwrite("gamma", &ReservoirParams::gamma);

    py::class_<DressedSpectrum>(m, "DressedSpectrum")
        .def_readonly("omega_left", &DressedSpectrum::omega_left)
        .def_readonly("omega_right", &DressedSpectrum::omega_right)
        .def_readonly("theta_left", &DressedSpectrum::theta_left)
        .def_readonly("theta_right", &DressedSpectrum::theta_right)
        .def_readonly("g_par", &DressedSpectrum::g_par)
        .def_readonly("g_perp", &DressedSpectrum::g_perp)
        .def_readonly("alpha", &DressedSpectrum::alpha)
        .def_readonly("beta", &DressedSpectrum::beta)
        .def_readonly("eps", &DressedSpectrum::eps);

    py::class_<TransitionChannel>(m, "TransitionChannel")
        .def_readonly("lower", &TransitionChannel::lower)
        .def_readonly("upper", &TransitionChannel::upper)
        .def_readonly("energy", &TransitionChannel::energy)
        .def_readonly("inverted", &TransitionChannel::inverted);

    py::class_<TransitionTable>(m, "TransitionTable")
        .def_readonly("channels", &TransitionTable::channels);

    py::class_<JumpTable>(m, "JumpTable")
        .def_readonly("a", &JumpTable::a)
        .def_readonly("a0", &JumpTable::a0);

    py::class_<ResonanceScan>(m, "ResonanceScan")
        .def_readonly("voltages", &ResonanceScan::voltages)
        .def_readonly("always_resonant", &ResonanceScan::always_resonant);

    py::class_<ChannelRates>(m, "ChannelRates")
        .def_readonly("down", &ChannelRates::down)
        .def_readonly("up", &ChannelRates::up);

    py::class_<RateMatrix>(m, "RateMatrix").def_readonly("m", &RateMatrix::m);

    py::class_<Populations>(m, "Populations")
        .def_readonly("rho", &Populations::rho);

    py::class_<FluxTable>(m, "FluxTable").def_readonly("phi", &FluxTable::phi);

    py::class_<HeatReport>(m, "HeatReport")
        .def_readonly("q_left", &HeatReport::q_left)
        .def_readonly("q_right", &HeatReport::q_right)
        .def_readonly("populations", &HeatReport::populations)
        .def_readonly("fluxes", &HeatReport::fluxes)
        .def_readonly("residual", &HeatReport::residual);

    py::class_<RectificationResult>(m, "RectificationResult")
        .def_readonly("q_forward", &RectificationResult::q_forward)
        .def_readonly("q_reverse", &RectificationResult::q_reverse)
        .def_readonly("r", &RectificationResult::r)
        .def_readonly("defined", &RectificationResult::defined);

    m.def("default_device", &default_device,
          "Device used by every figure preset");
    m.def("asymmetry_energy", &asymmetry_energy, py::arg("defect"),
          py::arg("vp"));
    m.def("dress", &dress, py::arg("device"), py::arg("vp"));
    m.def("transition_table", &transition_table, py::arg("spectrum"));
    m.def("jump_table", &jump_table, py::arg("spectrum"));
    m.def("find_resonances", &find_resonances, py::arg("device"),
          py::arg("vp_min"), py::arg("vp_max"), py::arg("grid_points"));

    m.def("bose_occupation", &bose_occupation, py::arg("omega"),
          py::arg("temperature_ghz"));
    m.def("channel_rates", &channel_rates, py::arg("table"), py::arg("jumps"),
          py::arg("left"), py::arg("right"));
    m.def("rate_matrix", &rate_matrix, py::arg("rates"), py::arg("mu"));

    m.def("steady_state", &steady_state, py::arg("m_total"));
    m.def("steady_state_closed_form", &steady_state_closed_form,
          py::arg("rates"));
    m.def("heat_current", &heat_current, py::arg("m_mu"), py::arg("eps"),
          py::arg("rho"));
    m.def("channel_fluxes", &channel_fluxes, py::arg("rates"), py::arg("rho"));
    m.def("solve_transport", &solve_transport, py::arg("device"),
          py::arg("left"), py::arg("right"), py::arg("vp"));
    m.def("rectification", &rectification, py::arg("device"), py::arg("left"),
          py::arg("right"), py::arg("vp"));

    py::class_<LowTempModel>(m, "LowTempModel")
        .def_readonly("m_left", &LowTempModel::m_left)
        .def_readonly("m_right", &LowTempModel::m_right)
        .def_readonly("eps", &LowTempModel::eps)
        .def_readonly("max_boltzmann", &LowTempModel::max_boltzmann)
        .def_readonly("in_regime", &LowTempModel::in_regime);

    py::class_<LowTempComparison>(m, "LowTempComparison")
        .def_readonly("vp", &LowTempComparison::vp)
        .def_readonly("q_exact_forward", &LowTempComparison::q_exact_forward)
        .def_readonly("q_approx_forward", &LowTempComparison::q_approx_forward)
        .def_readonly("rel_dev_forward", &LowTempComparison::rel_dev_forward)
        .def_readonly("q_exact_reverse", &LowTempComparison::q_exact_reverse)
        .def_readonly("q_approx_reverse", &LowTempComparison::q_approx_reverse)
        .def_readonly("rel_dev_reverse", &LowTempComparison::rel_dev_reverse)
        .def_readonly("in_regime", &LowTempComparison::in_regime);

    m.def("lowtemp_generator", &lowtemp_generator, py::arg("spectrum"),
          py::arg("table"), py::arg("jumps"), py::arg("left"), py::arg("right"));
    m.def("lowtemp_steady_state", &lowtemp_steady_state, py::arg("model"));
    m.def("lowtemp_heat_current", &lowtemp_heat_current, py::arg("model"));
    m.def("compare_exact_approx", &compare_exact_approx, py::arg("device"),
          py::arg("left"), py::arg("right"), py::arg("vp_grid"));

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("PIEZO_VOLTAGE", SweepAxis::PiezoVoltage)
        .value("HOT_TEMPERATURE", SweepAxis::HotTemperature);

    py::enum_<SweepMode>(m, "SweepMode")
        .value("FORWARD_ONLY", SweepMode::ForwardOnly)
        .value("FORWARD_REVERSE_R", SweepMode::ForwardReverseR)
        .value("LOWTEMP_COMPARE", SweepMode::LowTempCompare)
        .value("POPULATIONS", SweepMode::Populations)
        .value("FLUXES", SweepMode::Fluxes);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("device", &Scenario::device)
        .def_readwrite("left", &Scenario::left)
        .def_readwrite("right", &Scenario::right)
        .def_readwrite("axis", &Scenario::axis)
        .def_readwrite("axis_min", &Scenario::axis_min)
        .def_readwrite("axis_max", &Scenario::axis_max)
        .def_readwrite("axis_steps", &Scenario::axis_steps)
        .def_readwrite("vp_fixed", &Scenario::vp_fixed)
        .def_readwrite("mode", &Scenario::mode)
        .def_readwrite("preset", &Scenario::preset);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis", &SweepRow::axis)
        .def_readonly("omega_left", &SweepRow::omega_left)
        .def_readonly("omega_right", &SweepRow::omega_right)
        .def_readonly("rho_forward", &SweepRow::rho_forward)
        .def_readonly("rho_reverse", &SweepRow::rho_reverse)
        .def_readonly("has_reverse", &SweepRow::has_reverse)
        .def_readonly("q_forward", &SweepRow::q_forward)
        .def_readonly("q_reverse", &SweepRow::q_reverse)
        .def_readonly("r_factor", &SweepRow::r_factor)
        .def_readonly("r_defined", &SweepRow::r_defined)
        .def_readonly("residual_forward", &SweepRow::residual_forward)
        .def_readonly("residual_reverse", &SweepRow::residual_reverse)
        .def_readonly("q_approx_forward", &SweepRow::q_approx_forward)
        .def_readonly("q_approx_reverse", &SweepRow::q_approx_reverse)
        .def_readonly("lowtemp_in_regime", &SweepRow::lowtemp_in_regime);

    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_preset", &parse_preset, py::arg("name"));
    m.def("preset_scenario", &preset_scenario, py::arg("preset"));
    m.def(
        "preset_names",
        []() {
            std::vector<std::string> names;
            for (Preset p : {Preset::Fig2, Preset::Fig3, Preset::Fig4,
                             Preset::Fig5, Preset::Fig6, Preset::Fig7,
                             Preset::Fig8, Preset::Fig9a, Preset::Fig9b,
                             Preset::Fig9c, Preset::Fig9d}) {
                names.push_back(preset_name(p));
            }
            return names;
        },
        "All figure preset ids");
    m.def("run_scenario", &run_scenario, py::arg("scenario"),
          py::arg("n_threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "emit_csv",
        [](const std::vector<SweepRow>& rows, const std::string& path) {
            emit_csv(rows, path);
        },
        py::arg("rows"), py::arg("path"));
    m.def(
        "csv_string",
        [](const std::vector<SweepRow>& rows) {
            std::ostringstream out;
            emit_csv(rows, out);
            return out.str();
        },
        py::arg("rows"));
}
