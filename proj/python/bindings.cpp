// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for rishbf.

#include "rishbf/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <stdexcept>

namespace py = pybind11;
using namespace rishbf;

namespace
{

std::pair<double, double> to_pair(DirectionCoeffs g) { return {g.x, g.y}; }

py::dict aggregate_dict(const Aggregate &a)
{
    py::dict d;
    d["sweep_value"] = a.sweep_value;
    d["method"] = std::string(to_string(a.method));
    d["trials"] = a.trials;
    d["flagged"] = a.flagged;
    d["mean"] = a.mean;
    d["stddev"] = a.stddev;
    return d;
}

} // namespace

PYBIND11_MODULE(_rishbf, m)
{
    m.doc() = "RIS-aided angular-based hybrid beamforming simulator";

    py::register_exception<RankDeficientError>(m, "RankDeficientError", PyExc_RuntimeError);

    py::class_<UpaSize>(m, "UpaSize")
        .def(py::init([](int nx, int ny) { return UpaSize{nx, ny}; }), py::arg("nx"), py::arg("ny"))
        .def_readwrite("nx", &UpaSize::nx)
        .def_readwrite("ny", &UpaSize::ny)
        .def_property_readonly("total", &UpaSize::total)
        .def("__repr__", [](const UpaSize &s) {
            return "UpaSize(" + std::to_string(s.nx) + ", " + std::to_string(s.ny) + ")";
        });

    py::class_<AngularCluster>(m, "AngularCluster")
        .def(py::init<>())
        .def_readwrite("mean_elev_aoa", &AngularCluster::mean_elev_aoa)
        .def_readwrite("spread_elev_aoa", &AngularCluster::spread_elev_aoa)
        .def_readwrite("mean_azim_aoa", &AngularCluster::mean_azim_aoa)
        .def_readwrite("spread_azim_aoa", &AngularCluster::spread_azim_aoa)
        .def_readwrite("mean_elev_aod", &AngularCluster::mean_elev_aod)
        .def_readwrite("spread_elev_aod", &AngularCluster::spread_elev_aod)
        .def_readwrite("mean_azim_aod", &AngularCluster::mean_azim_aod)
        .def_readwrite("spread_azim_aod", &AngularCluster::spread_azim_aod)
        .def_readwrite("num_paths", &AngularCluster::num_paths);

    m.def("path_loss", &path_loss, py::arg("distance"), py::arg("exponent"), py::arg("ref_loss_db") = 30.0);
    m.def(
        "direction_coeffs", [](double elev, double azim) { return to_pair(direction_coeffs(elev, azim)); },
        py::arg("elev_deg"), py::arg("azim_deg"));
    m.def(
        "phase_response_vector",
        [](const UpaSize &size, double gx, double gy, double spacing) {
            return phase_response_vector(size, {gx, gy}, spacing);
        },
        py::arg("size"), py::arg("gamma_x"), py::arg("gamma_y"), py::arg("spacing") = 0.5);

    py::class_<QuantizedPair>(m, "QuantizedPair")
        .def_readonly("m", &QuantizedPair::m)
        .def_readonly("n", &QuantizedPair::n)
        .def_readonly("kappa_x", &QuantizedPair::kappa_x)
        .def_readonly("kappa_y", &QuantizedPair::kappa_y)
        .def_readonly("score", &QuantizedPair::score);
    m.def(
        "quantized_grid", [](const UpaSize &size) { return quantized_grid(size).pairs; }, py::arg("size"));

    py::class_<RfBeamformer>(m, "RfBeamformer")
        .def_readonly("matrix", &RfBeamformer::matrix)
        .def_readonly("pairs", &RfBeamformer::pairs);
    m.def(
        "build_rf_beamformer",
        [](const UpaSize &size, const std::vector<QuantizedPair> &pairs, double spacing) {
            return build_rf_beamformer(size, pairs, spacing);
        },
        py::arg("size"), py::arg("pairs"), py::arg("spacing") = 0.5);

    m.def("noise_power_watt", &noise_power_watt, py::arg("psd_dbm_hz"), py::arg("bandwidth_hz"));
    m.def("effective_channel", &effective_channel, py::arg("f_r"), py::arg("h"), py::arg("f_t"));

    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def_readonly("gamma", &PowerAllocation::gamma)
        .def_readonly("water_level", &PowerAllocation::water_level);
    m.def(
        "water_filling",
        [](const std::vector<double> &sv, double noise, double total, int n_s) {
            return water_filling(sv, noise, total, n_s);
        },
        py::arg("singular_values"), py::arg("noise_power"), py::arg("total_power"), py::arg("num_streams"));

    py::class_<Precoder>(m, "Precoder")
        .def_readonly("b_t", &Precoder::b_t)
        .def_readonly("singular_values", &Precoder::singular_values)
        .def_readonly("u", &Precoder::u)
        .def_readonly("v", &Precoder::v)
        .def_readonly("allocation", &Precoder::allocation)
        .def_readonly("rank", &Precoder::rank);
    m.def("bb_precoder", &bb_precoder, py::arg("eff"), py::arg("noise_power"), py::arg("total_power"),
          py::arg("num_streams"));
    m.def("mmse_combiner", &mmse_combiner, py::arg("eff"), py::arg("b_t"));
    m.def(
        "achievable_rate",
        [](const ComplexMatrix &b_r, const ComplexMatrix &eff, const ComplexMatrix &b_t, double noise) {
            return achievable_rate(b_r, eff, b_t, noise);
        },
        py::arg("b_r"), py::arg("eff"), py::arg("b_t"), py::arg("noise_power"));
    m.def(
        "design_baseband_rate",
        [](const ComplexMatrix &eff, double noise, double total, int n_s) {
            return design_baseband(eff, noise, total, n_s).rate;
        },
        py::arg("eff"), py::arg("noise_power"), py::arg("total_power"), py::arg("num_streams"));

    py::class_<SwarmConfig>(m, "SwarmConfig")
        .def(py::init<>())
        .def_readwrite("num_particles", &SwarmConfig::num_particles)
        .def_readwrite("num_iterations", &SwarmConfig::num_iterations)
        .def_readwrite("inertia", &SwarmConfig::inertia)
        .def_readwrite("accel_personal", &SwarmConfig::accel_personal)
        .def_readwrite("accel_social", &SwarmConfig::accel_social)
        .def_readwrite("velocity_clamp", &SwarmConfig::velocity_clamp)
        .def_readwrite("seed", &SwarmConfig::seed);

    py::class_<SwarmResult>(m, "SwarmResult")
        .def_property_readonly("best", [](const SwarmResult &r) { return r.best.omega; })
        .def_readonly("best_fitness", &SwarmResult::best_fitness)
        .def_readonly("trace", &SwarmResult::trace)
        .def_readonly("initial_best", &SwarmResult::initial_best)
        .def_readonly("evaluations", &SwarmResult::evaluations);

    // Python objectives receive the phase vector as a list of floats.
    m.def(
        "pso_optimize",
        [](const SwarmConfig &cfg, int dims, const std::function<double(std::vector<double>)> &f) {
            return pso_optimize(cfg, dims, [&](std::span<const double> w) {
                return f(std::vector<double>(w.begin(), w.end()));
            });
        },
        py::arg("config"), py::arg("dimensions"), py::arg("objective"));
    m.def(
        "exhaustive_search",
        [](int m_i, int levels, const std::function<double(std::vector<double>)> &f) {
            const auto r = exhaustive_search(m_i, levels, [&](std::span<const double> w) {
                return f(std::vector<double>(w.begin(), w.end()));
            });
            return std::make_pair(r.best.omega, r.best_fitness);
        },
        py::arg("m_i"), py::arg("levels"), py::arg("objective"));
    m.def(
        "random_phases", [](int m_i, std::uint64_t seed) { return random_phases(m_i, seed).omega; },
        py::arg("m_i"), py::arg("seed"));
    m.def(
        "constant_phases", [](int m_i, double value) { return constant_phases(m_i, value).omega; },
        py::arg("m_i"), py::arg("value") = 0.0);

    py::class_<LinkBudget>(m, "LinkBudget")
        .def_readonly("noise_power", &LinkBudget::noise_power)
        .def_readonly("total_power", &LinkBudget::total_power)
        .def_readonly("num_streams", &LinkBudget::num_streams);

    py::enum_<Method>(m, "Method")
        .value("pso", Method::Pso)
        .value("random", Method::Random)
        .value("constant", Method::Constant)
        .value("no_ris", Method::NoRis);

    py::class_<Geometry>(m, "Geometry")
        .def_readwrite("d_tr", &Geometry::d_tr)
        .def_readwrite("d_v", &Geometry::d_v)
        .def_readwrite("ris_x", &Geometry::ris_x)
        .def_readwrite("d1", &Geometry::d1)
        .def_readwrite("d2", &Geometry::d2)
        .def_readwrite("ratio", &Geometry::ratio)
        .def_property_readonly("distances", [](const Geometry &g) {
            const auto d = resolve_geometry(g);
            return std::make_pair(d.d1, d.d2);
        });
    m.def(
        "resolve_geometry",
        [](double d_tr, double d_v, double ris_x) {
            const auto d = resolve_geometry(d_tr, d_v, ris_x);
            return std::make_pair(d.d1, d.d2);
        },
        py::arg("d_tr"), py::arg("d_v"), py::arg("ris_x"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("tx_array", &ScenarioConfig::tx_array)
        .def_readwrite("rx_array", &ScenarioConfig::rx_array)
        .def_readwrite("ris_array", &ScenarioConfig::ris_array)
        .def_readwrite("n_t", &ScenarioConfig::n_t)
        .def_readwrite("n_r", &ScenarioConfig::n_r)
        .def_readwrite("n_s", &ScenarioConfig::n_s)
        .def_readwrite("geometry", &ScenarioConfig::geometry)
        .def_readwrite("clusters_tr", &ScenarioConfig::clusters_tr)
        .def_readwrite("clusters_ti", &ScenarioConfig::clusters_ti)
        .def_readwrite("clusters_ir", &ScenarioConfig::clusters_ir)
        .def_readwrite("p_t_dbm", &ScenarioConfig::p_t_dbm)
        .def_readwrite("ref_loss_db", &ScenarioConfig::ref_loss_db)
        .def_readwrite("pso", &ScenarioConfig::pso)
        .def_readwrite("num_trials", &ScenarioConfig::num_trials)
        .def_readwrite("master_seed", &ScenarioConfig::master_seed)
        .def_readwrite("methods", &ScenarioConfig::methods)
        .def_readwrite("workers", &ScenarioConfig::workers)
        .def("validate", &ScenarioConfig::validate)
        .def("noise_power", &ScenarioConfig::noise_power)
        .def("total_power", &ScenarioConfig::total_power)
        .def("link_budget", &ScenarioConfig::link_budget);
    m.def("baseline_scenario", &baseline_scenario);
    m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("sweep_var", &ResultRow::sweep_var)
        .def_readonly("sweep_value", &ResultRow::sweep_value)
        .def_readonly("method", &ResultRow::method)
        .def_readonly("trial", &ResultRow::trial)
        .def_readonly("seed", &ResultRow::seed)
        .def_readonly("rate", &ResultRow::rate)
        .def_readonly("flag", &ResultRow::flag)
        .def_readonly("pso_initial", &ResultRow::pso_initial)
        .def_readonly("pso_final", &ResultRow::pso_final)
        .def_readonly("trace", &ResultRow::trace);

    m.def(
        "run_trial",
        [](const ScenarioConfig &cfg, Method method, int trial, std::size_t sweep_index) {
            return run_trial(cfg, method, derive_trial_seeds(cfg.master_seed, sweep_index, method, trial));
        },
        py::arg("config"), py::arg("method"), py::arg("trial") = 0, py::arg("sweep_index") = 0);

    // Returns (rows, aggregates); aggregates are plain dicts.
    m.def(
        "run_sweep",
        [](const ScenarioConfig &cfg, const std::string &sweep) {
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(cfg, parse_sweep(sweep));
            }
            py::list aggs;
            for (const auto &a : r.aggregates)
                aggs.append(aggregate_dict(a));
            return py::make_tuple(r.rows, aggs);
        },
        py::arg("config"), py::arg("sweep"));
    m.def("format_results", &format_results, py::arg("rows"));
    m.def("write_results", &write_results, py::arg("rows"), py::arg("path"));
}
