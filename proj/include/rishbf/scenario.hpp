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

#ifndef RISHBF_SCENARIO_HPP
#define RISHBF_SCENARIO_HPP

#include "rishbf/channel.hpp"
#include "rishbf/ris_optimizer.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace rishbf
{

enum class Method
{
    Pso,
    Random,
    Constant,
    NoRis
};

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
// Stable per-method tag mixed into seeds; independent of list position.
std::uint64_t method_tag(Method method);

// Top view: Tx at the origin, Rx at (d_tr, 0), RIS at (ris_x, d_v).
enum class GeometryMode
{
    RisX,  // RIS x-coordinate given
    D1,    // Tx-RIS distance given, x-coordinate solved
    Ratio, // d2 = ratio * d1, x-coordinate solved
    Direct // d1 and d2 given outright
};

struct Geometry
{
    double d_tr = 200.0;
    double d_v = 5.0;
    GeometryMode mode = GeometryMode::D1;
    double ris_x = 0.0;
    double d1 = 20.0;
    double d2 = 0.0;
    double ratio = 4.0;
};

struct LinkDistances
{
    double d1 = 0.0; // Tx-RIS
    double d2 = 0.0; // RIS-Rx
};

// d1 = sqrt(ris_x^2 + d_v^2), d2 = sqrt((d_tr - ris_x)^2 + d_v^2). Requires 0 < ris_x < d_tr.
LinkDistances resolve_geometry(double d_tr, double d_v, double ris_x);
double ris_x_for_d1(double d_tr, double d_v, double d1);
double ris_x_for_ratio(double d_tr, double d_v, double ratio);
LinkDistances resolve_geometry(const Geometry &geometry);

struct ScenarioConfig
{
    UpaSize tx_array{8, 8};
    UpaSize rx_array{4, 4};
    UpaSize ris_array{16, 16};
    int n_t = 6;
    int n_r = 2;
    int n_s = 2;
    double spacing = 0.5;

    Geometry geometry;

    std::vector<AngularCluster> clusters_tr;
    std::vector<AngularCluster> clusters_ti;
    std::vector<AngularCluster> clusters_ir;
    double exponent_tr = 4.5; // NLOS
    double exponent_ti = 2.3; // LOS
    double exponent_ir = 2.3; // LOS

    double p_t_dbm = -30.0;
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 10e3;
    double ref_loss_db = 30.0;

    double support_step_deg = 1.0;
    double constant_phase = 0.0;
    SwarmConfig pso;

    int num_trials = 50;
    std::uint64_t master_seed = 1;
    std::vector<Method> methods{Method::Pso, Method::Random, Method::Constant, Method::NoRis};
    int workers = 1;

    void validate() const;

    SubchannelSpec subchannel(Link link) const;
    double noise_power() const; // watts
    double total_power() const; // watts
    LinkBudget link_budget() const { return {noise_power(), total_power(), n_s}; }
};

// Single cluster per link, five paths, 10 degree spreads, mean angles TR 35/25, TI 60/90, IR 50/225.
ScenarioConfig baseline_scenario();

// INI-style key = value text with [section] headers; anything omitted keeps the baseline_scenario() value.
ScenarioConfig parse_scenario(std::istream &in);
ScenarioConfig parse_scenario_text(const std::string &text);
ScenarioConfig load_scenario(const std::filesystem::path &path);

enum class SweepVariable
{
    D1,
    DTR,
    PT,
    MI
};

std::string_view to_string(SweepVariable variable);

struct SweepSpec
{
    SweepVariable variable = SweepVariable::D1;
    std::vector<double> values;

    void validate() const;
};

// "d1=20,60,100"
SweepSpec parse_sweep(std::string_view text);

ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepVariable variable, double value);

} // namespace rishbf

#endif
