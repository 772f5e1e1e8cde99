// SPDX-License-Identifier: Apache-2.0
//
// rishbf: link-level simulator for RIS-aided angular-based hybrid beamforming
// Copyright (C) 2026 The rishbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rishbf/scenario.hpp"
#include "rishbf/baseband.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rishbf
{

namespace pt = boost::property_tree;

std::string_view to_string(Method method)
{
    switch (method)
    {
    case Method::Pso:
        return "pso";
    case Method::Random:
        return "random";
    case Method::Constant:
        return "constant";
    case Method::NoRis:
        return "no_ris";
    }
    return "?";
}

Method parse_method(std::string_view name)
{
    for (auto m : {Method::Pso, Method::Random, Method::Constant, Method::NoRis})
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected pso, random, constant, no_ris)");
}

std::uint64_t method_tag(Method method)
{
    switch (method)
    {
    case Method::Pso:
        return 1;
    case Method::Random:
        return 2;
    case Method::Constant:
        return 3;
    case Method::NoRis:
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Geometry

LinkDistances resolve_geometry(double d_tr, double d_v, double ris_x)
{
    if (!(ris_x > 0.0 && ris_x < d_tr))
        throw std::invalid_argument("RIS x-coordinate " + std::to_string(ris_x) + " must lie strictly inside (0, " +
                                    std::to_string(d_tr) + ")");
    return {std::hypot(ris_x, d_v), std::hypot(d_tr - ris_x, d_v)};
}

double ris_x_for_d1(double d_tr, double d_v, double d1)
{
    if (!(d1 > std::abs(d_v)))
        throw std::invalid_argument("d1 = " + std::to_string(d1) + " m cannot be reached with a lateral offset d_V = " +
                                    std::to_string(d_v) + " m");
    const double x = std::sqrt(d1 * d1 - d_v * d_v);
    if (!(x < d_tr))
        throw std::invalid_argument("d1 = " + std::to_string(d1) + " m places the RIS beyond the receiver");
    return x;
}

double ris_x_for_ratio(double d_tr, double d_v, double ratio)
{
    if (!(ratio > 0.0) || !(d_tr > 0.0))
        throw std::invalid_argument("distance ratio and d_TR must be positive");
    // (d_tr - x)^2 + d_v^2 = ratio^2 (x^2 + d_v^2)
    const double a = 1.0 - ratio * ratio;
    const double c = d_tr * d_tr + d_v * d_v * a;
    std::vector<double> roots;
    if (std::abs(a) < 1e-14)
        roots.push_back(c / (2.0 * d_tr));
    else
    {
        const double disc = d_tr * d_tr - a * c;
        if (disc >= 0.0)
        {
            roots.push_back((d_tr + std::sqrt(disc)) / a);
            roots.push_back((d_tr - std::sqrt(disc)) / a);
        }
    }
    for (double x : roots)
        if (x > 0.0 && x < d_tr)
            return x;
    throw std::invalid_argument("no RIS placement satisfies d2 = " + std::to_string(ratio) + " * d1");
}

LinkDistances resolve_geometry(const Geometry &g)
{
    if (!(g.d_tr > 0.0))
        throw std::invalid_argument("d_TR must be positive");
    switch (g.mode)
    {
    case GeometryMode::RisX:
        return resolve_geometry(g.d_tr, g.d_v, g.ris_x);
    case GeometryMode::D1:
        return resolve_geometry(g.d_tr, g.d_v, ris_x_for_d1(g.d_tr, g.d_v, g.d1));
    case GeometryMode::Ratio:
        return resolve_geometry(g.d_tr, g.d_v, ris_x_for_ratio(g.d_tr, g.d_v, g.ratio));
    case GeometryMode::Direct:
        if (!(g.d1 > 0.0) || !(g.d2 > 0.0))
            throw std::invalid_argument("direct geometry needs positive d1 and d2");
        return {g.d1, g.d2};
    }
    throw std::invalid_argument("unknown geometry mode");
}

// ---------------------------------------------------------------------------
// Scenario

namespace
{

AngularCluster symmetric_cluster(double elev, double azim, double spread, int paths)
{
    return {elev, spread, azim, spread, elev, spread, azim, spread, paths};
}

} // namespace

ScenarioConfig baseline_scenario()
{
    ScenarioConfig cfg;
    cfg.clusters_tr = {symmetric_cluster(35.0, 25.0, 10.0, 5)};
    cfg.clusters_ti = {symmetric_cluster(60.0, 90.0, 10.0, 5)};
    cfg.clusters_ir = {symmetric_cluster(50.0, 225.0, 10.0, 5)};
    return cfg;
}

void ScenarioConfig::validate() const
{
    tx_array.validate();
    rx_array.validate();
    ris_array.validate();
    if (n_t < 1 || n_r < 1 || n_s < 1)
        throw std::invalid_argument("N_T, N_R and N_S must be positive");
    if (n_s > std::min(n_t, n_r))
        throw std::invalid_argument("N_S = " + std::to_string(n_s) + " violates N_S <= min(N_T, N_R) = " +
                                    std::to_string(std::min(n_t, n_r)));
    if (n_t > tx_array.total())
        throw std::invalid_argument("N_T = " + std::to_string(n_t) + " exceeds M_T = " +
                                    std::to_string(tx_array.total()));
    if (n_r > rx_array.total())
        throw std::invalid_argument("N_R = " + std::to_string(n_r) + " exceeds M_R = " +
                                    std::to_string(rx_array.total()));
    if (!(spacing > 0.0))
        throw std::invalid_argument("element spacing must be positive");
    if (!(support_step_deg > 0.0))
        throw std::invalid_argument("support sampling step must be positive");
    if (num_trials < 1)
        throw std::invalid_argument("at least one trial is required");
    if (workers < 1)
        throw std::invalid_argument("worker count must be positive");
    if (methods.empty())
        throw std::invalid_argument("no methods selected");
    std::set<Method> unique(methods.begin(), methods.end());
    if (unique.size() != methods.size())
        throw std::invalid_argument("methods list contains duplicates");
    pso.validate();
    resolve_geometry(geometry);
    noise_power();
    for (auto link : {Link::TR, Link::TI, Link::IR})
        subchannel(link).validate();
}

SubchannelSpec ScenarioConfig::subchannel(Link link) const
{
    const auto dist = resolve_geometry(geometry);
    SubchannelSpec s;
    s.label = link;
    s.ref_loss_db = ref_loss_db;
    s.spacing = spacing;
    switch (link)
    {
    case Link::TR:
        s.clusters = clusters_tr;
        s.distance = geometry.d_tr;
        s.path_loss_exponent = exponent_tr;
        s.tx_array = tx_array;
        s.rx_array = rx_array;
        break;
    case Link::TI:
        s.clusters = clusters_ti;
        s.distance = dist.d1;
        s.path_loss_exponent = exponent_ti;
        s.tx_array = tx_array;
        s.rx_array = ris_array;
        break;
    case Link::IR:
        s.clusters = clusters_ir;
        s.distance = dist.d2;
        s.path_loss_exponent = exponent_ir;
        s.tx_array = ris_array;
        s.rx_array = rx_array;
        break;
    }
    return s;
}

double ScenarioConfig::noise_power() const { return noise_power_watt(noise_psd_dbm_hz, bandwidth_hz); }

double ScenarioConfig::total_power() const { return dbm2watt(p_t_dbm); }

// ---------------------------------------------------------------------------
// Config text

namespace
{

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    for (auto &p : parts)
        boost::trim(p);
    parts.erase(std::remove(parts.begin(), parts.end(), std::string{}), parts.end());
    return parts;
}

double to_double(const std::string &key, const std::string &text)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config key '" + key + "': '" + text + "' is not a number");
    }
}

long long to_integer(const std::string &key, const std::string &text)
{
    const double v = to_double(key, text);
    if (v != std::floor(v))
        throw std::invalid_argument("config key '" + key + "': '" + text + "' is not an integer");
    return static_cast<long long>(v);
}

UpaSize to_upa(const std::string &key, const std::string &text)
{
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of("xX"));
    if (parts.size() != 2)
        throw std::invalid_argument("config key '" + key + "': expected NXxNY, got '" + text + "'");
    UpaSize s{static_cast<int>(to_integer(key, boost::trim_copy(parts[0]))),
              static_cast<int>(to_integer(key, boost::trim_copy(parts[1])))};
    s.validate();
    return s;
}

GeometryMode to_mode(const std::string &text)
{
    static const std::map<std::string, GeometryMode> modes{{"ris_x", GeometryMode::RisX},
                                                           {"d1", GeometryMode::D1},
                                                           {"ratio", GeometryMode::Ratio},
                                                           {"direct", GeometryMode::Direct}};
    const auto it = modes.find(text);
    if (it == modes.end())
        throw std::invalid_argument("geometry mode '" + text + "' is not one of ris_x, d1, ratio, direct");
    return it->second;
}

// Per-cluster keys of a [tr]/[ti]/[ir] section. Each takes a comma list with one
// entry per cluster; a single entry applies to every cluster.
void apply_link_section(const std::string &section, const pt::ptree &tree, std::vector<AngularCluster> &clusters,
                        double &exponent)
{
    using Field = double AngularCluster::*;
    static const std::map<std::string, Field> fields{
        {"elev_aoa", &AngularCluster::mean_elev_aoa},         {"elev_aoa_spread", &AngularCluster::spread_elev_aoa},
        {"azim_aoa", &AngularCluster::mean_azim_aoa},         {"azim_aoa_spread", &AngularCluster::spread_azim_aoa},
        {"elev_aod", &AngularCluster::mean_elev_aod},         {"elev_aod_spread", &AngularCluster::spread_elev_aod},
        {"azim_aod", &AngularCluster::mean_azim_aod},         {"azim_aod_spread", &AngularCluster::spread_azim_aod},
    };

    std::map<std::string, std::vector<std::string>> lists;
    std::size_t count = 0;
    for (const auto &[key, node] : tree)
    {
        const std::string full = section + "." + key;
        const auto value = node.get_value<std::string>();
        if (key == "exponent")
        {
            exponent = to_double(full, value);
            continue;
        }
        if (key != "paths" && !fields.contains(key))
            throw std::invalid_argument("unknown config key '" + full + "'");
        auto parts = split_list(value);
        if (parts.empty())
            throw std::invalid_argument("config key '" + full + "' is empty");
        if (parts.size() > 1)
        {
            if (count > 1 && parts.size() != count)
                throw std::invalid_argument("config key '" + full + "' lists " + std::to_string(parts.size()) +
                                            " clusters, other keys list " + std::to_string(count));
            count = parts.size();
        }
        lists[key] = std::move(parts);
    }
    if (lists.empty())
        return;
    if (count == 0)
        count = 1;

    // Start from the existing first cluster so partially specified sections inherit defaults.
    const AngularCluster base = clusters.empty() ? AngularCluster{} : clusters.front();
    std::vector<AngularCluster> out(count, base);
    for (const auto &[key, parts] : lists)
    {
        const std::string full = section + "." + key;
        for (std::size_t c = 0; c < count; ++c)
        {
            const std::string &text = parts.size() == 1 ? parts.front() : parts[c];
            if (key == "paths")
                out[c].num_paths = static_cast<int>(to_integer(full, text));
            else
                out[c].*(fields.at(key)) = to_double(full, text);
        }
    }
    clusters = std::move(out);
}

} // namespace

ScenarioConfig parse_scenario(std::istream &in)
{
    pt::ptree tree;
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }

    ScenarioConfig cfg = baseline_scenario();
    bool geometry_mode_given = false;
    bool geometry_ris_x = false, geometry_d1 = false, geometry_d2 = false, geometry_ratio = false;

    for (const auto &[section, body] : tree)
    {
        if (body.empty() && !body.data().empty())
            throw std::invalid_argument("config key '" + section + "' must live inside a [section]");

        if (section == "tr" || section == "ti" || section == "ir")
        {
            auto &clusters = section == "tr" ? cfg.clusters_tr : section == "ti" ? cfg.clusters_ti : cfg.clusters_ir;
            auto &exponent = section == "tr" ? cfg.exponent_tr : section == "ti" ? cfg.exponent_ti : cfg.exponent_ir;
            apply_link_section(section, body, clusters, exponent);
            continue;
        }

        for (const auto &[key, node] : body)
        {
            const std::string full = section + "." + key;
            const auto v = boost::trim_copy(node.get_value<std::string>());
            const auto num = [&] { return to_double(full, v); };
            const auto integer = [&] { return to_integer(full, v); };

            if (section == "arrays")
            {
                if (key == "tx")
                    cfg.tx_array = to_upa(full, v);
                else if (key == "rx")
                    cfg.rx_array = to_upa(full, v);
                else if (key == "ris")
                    cfg.ris_array = to_upa(full, v);
                else if (key == "spacing")
                    cfg.spacing = num();
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else if (section == "rf_chains")
            {
                if (key == "n_t")
                    cfg.n_t = static_cast<int>(integer());
                else if (key == "n_r")
                    cfg.n_r = static_cast<int>(integer());
                else if (key == "n_s")
                    cfg.n_s = static_cast<int>(integer());
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else if (section == "geometry")
            {
                if (key == "d_tr")
                    cfg.geometry.d_tr = num();
                else if (key == "d_v")
                    cfg.geometry.d_v = num();
                else if (key == "mode")
                {
                    cfg.geometry.mode = to_mode(v);
                    geometry_mode_given = true;
                }
                else if (key == "ris_x")
                {
                    cfg.geometry.ris_x = num();
                    geometry_ris_x = true;
                }
                else if (key == "d1")
                {
                    cfg.geometry.d1 = num();
                    geometry_d1 = true;
                }
                else if (key == "d2")
                {
                    cfg.geometry.d2 = num();
                    geometry_d2 = true;
                }
                else if (key == "ratio")
                {
                    cfg.geometry.ratio = num();
                    geometry_ratio = true;
                }
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else if (section == "power")
            {
                if (key == "p_t_dbm")
                    cfg.p_t_dbm = num();
                else if (key == "noise_psd_dbm_hz")
                    cfg.noise_psd_dbm_hz = num();
                else if (key == "bandwidth_hz")
                    cfg.bandwidth_hz = num();
                else if (key == "ref_loss_db")
                    cfg.ref_loss_db = num();
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else if (section == "pso")
            {
                if (key == "particles")
                    cfg.pso.num_particles = static_cast<int>(integer());
                else if (key == "iterations")
                    cfg.pso.num_iterations = static_cast<int>(integer());
                else if (key == "inertia")
                    cfg.pso.inertia = num();
                else if (key == "accel_personal")
                    cfg.pso.accel_personal = num();
                else if (key == "accel_social")
                    cfg.pso.accel_social = num();
                else if (key == "velocity_clamp")
                    cfg.pso.velocity_clamp = num();
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else if (section == "run")
            {
                if (key == "trials")
                    cfg.num_trials = static_cast<int>(integer());
                else if (key == "seed")
                    cfg.master_seed = static_cast<std::uint64_t>(integer());
                else if (key == "workers")
                    cfg.workers = static_cast<int>(integer());
                else if (key == "constant_phase")
                    cfg.constant_phase = num();
                else if (key == "support_step_deg")
                    cfg.support_step_deg = num();
                else if (key == "methods")
                {
                    cfg.methods.clear();
                    for (const auto &name : split_list(v))
                        cfg.methods.push_back(parse_method(name));
                }
                else
                    throw std::invalid_argument("unknown config key '" + full + "'");
            }
            else
                throw std::invalid_argument("unknown config section [" + section + "]");
        }
    }

    // Without an explicit mode, infer it from whichever placement keys are present.
    if (!geometry_mode_given)
    {
        if (geometry_d1 && geometry_d2)
            cfg.geometry.mode = GeometryMode::Direct;
        else if (geometry_ratio)
            cfg.geometry.mode = GeometryMode::Ratio;
        else if (geometry_ris_x)
            cfg.geometry.mode = GeometryMode::RisX;
        else
            cfg.geometry.mode = GeometryMode::D1;
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig parse_scenario_text(const std::string &text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

ScenarioConfig load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    try
    {
        return parse_scenario(in);
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Sweeps

std::string_view to_string(SweepVariable variable)
{
    switch (variable)
    {
    case SweepVariable::D1:
        return "d1";
    case SweepVariable::DTR:
        return "dTR";
    case SweepVariable::PT:
        return "PT";
    case SweepVariable::MI:
        return "MI";
    }
    return "?";
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw std::invalid_argument("sweep has no values");
    if (values.size() > 1)
    {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i)
            if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
                throw std::invalid_argument("sweep values must be strictly ordered");
    }
}

SweepSpec parse_sweep(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw std::invalid_argument("sweep must look like <var>=<v1,v2,...>");
    const auto name = boost::trim_copy(std::string(text.substr(0, eq)));

    SweepSpec spec;
    bool found = false;
    for (auto v : {SweepVariable::D1, SweepVariable::DTR, SweepVariable::PT, SweepVariable::MI})
        if (boost::iequals(to_string(v), name))
        {
            spec.variable = v;
            found = true;
        }
    if (!found)
        throw std::invalid_argument("unknown sweep variable '" + name + "' (expected d1, dTR, PT, MI)");

    for (const auto &part : split_list(std::string(text.substr(eq + 1))))
        spec.values.push_back(to_double("sweep", part));
    spec.validate();
    return spec;
}

ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepVariable variable, double value)
{
    switch (variable)
    {
    case SweepVariable::D1:
        cfg.geometry.d1 = value;
        if (cfg.geometry.mode != GeometryMode::Direct)
            cfg.geometry.mode = GeometryMode::D1;
        break;
    case SweepVariable::DTR:
        if (cfg.geometry.mode == GeometryMode::Direct)
            throw std::invalid_argument("a dTR sweep needs a positional geometry mode (ris_x, d1 or ratio)");
        cfg.geometry.d_tr = value;
        break;
    case SweepVariable::PT:
        cfg.p_t_dbm = value;
        break;
    case SweepVariable::MI: {
        const auto side = static_cast<int>(std::lround(std::sqrt(value)));
        if (value < 1.0 || side * side != value)
            throw std::invalid_argument("MI sweep values must be perfect squares, got " + std::to_string(value));
        cfg.ris_array = {side, side};
        break;
    }
    }
    return cfg;
}

} // namespace rishbf
