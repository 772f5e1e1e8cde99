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

#ifndef RISHBF_HARNESS_HPP
#define RISHBF_HARNESS_HPP

#include "rishbf/baseband.hpp"
#include "rishbf/rf_beamformer.hpp"
#include "rishbf/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rishbf
{

// A trial's channel draw is shared by every method and every sweep point (common random
// numbers); the method stream only feeds PSO and random phases.
struct TrialSeeds
{
    std::uint64_t channel = 0;
    std::uint64_t method = 0;
};

// channel = hash(master, trial); method = hash(master, sweep_index, method_tag, trial).
TrialSeeds derive_trial_seeds(std::uint64_t master_seed, std::size_t sweep_index, Method method, int trial);

// Full three-stage design for one channel realization and method.
struct TrialDesign
{
    ChannelRealization channel;
    RfBeamformer tx_rf;
    RfBeamformer rx_rf;
    BeamformerSet beamformers; // f_r stored as N_R x M_R
    PhaseConfig phases;        // empty for no_ris
    std::optional<SwarmResult> swarm;
    double rate = 0.0;
    bool rf_padded = false;
    bool rank_deficient = false;
};

TrialDesign design_trial(const ScenarioConfig &cfg, Method method, const TrialSeeds &seeds);

struct ResultRow
{
    std::string sweep_var;
    double sweep_value = 0.0;
    std::size_t sweep_index = 0;
    Method method = Method::Pso;
    int trial = 0;
    std::uint64_t seed = 0; // method seed
    double rate = 0.0;      // bits/s/Hz
    std::string flag = "ok";
    // PSO summary: initial-swarm best, final global best, iterations run.
    double pso_initial = 0.0;
    double pso_final = 0.0;
    int pso_iterations = 0;
    std::vector<double> trace;
};

ResultRow run_trial(const ScenarioConfig &cfg, Method method, const TrialSeeds &seeds);

struct Aggregate
{
    double sweep_value = 0.0;
    Method method = Method::Pso;
    int trials = 0;
    int flagged = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation
};

struct SweepResult
{
    std::vector<ResultRow> rows; // ordered by (sweep value, method, trial)
    std::vector<Aggregate> aggregates;

    const Aggregate &aggregate(double sweep_value, Method method) const;
};

// Runs every sweep value x method x trial; cfg.workers threads share the job list.
SweepResult run_sweep(const ScenarioConfig &cfg, const SweepSpec &sweep);

std::vector<Aggregate> aggregate_rows(const std::vector<ResultRow> &rows);

inline constexpr const char *kResultsHeader = "sweep_var,sweep_value,method,trial,seed,rate_bps_hz,flag";

std::string format_results(const std::vector<ResultRow> &rows);
void write_results(const std::vector<ResultRow> &rows, const std::filesystem::path &path);

// iteration,fitness with 1-based iterations.
void write_trace(const std::vector<double> &trace, const std::filesystem::path &path);

} // namespace rishbf

#endif
