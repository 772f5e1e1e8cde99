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

#include "rishbf/harness.hpp"
#include "rishbf/seeding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace rishbf
{

TrialSeeds derive_trial_seeds(std::uint64_t master_seed, std::size_t sweep_index, Method method, int trial)
{
    const auto t = static_cast<std::uint64_t>(trial);
    return {derive_seed(master_seed, {0, t}), derive_seed(master_seed, {sweep_index, method_tag(method), t})};
}

namespace
{

std::vector<DirectionCoeffs> receive_dirs(std::initializer_list<const std::vector<PathRealization> *> sets)
{
    std::vector<DirectionCoeffs> out;
    for (const auto *s : sets)
        for (const auto &p : *s)
            out.push_back(p.rx);
    return out;
}

std::vector<DirectionCoeffs> transmit_dirs(std::initializer_list<const std::vector<PathRealization> *> sets)
{
    std::vector<DirectionCoeffs> out;
    for (const auto *s : sets)
        for (const auto &p : *s)
            out.push_back(p.tx);
    return out;
}

} // namespace

TrialDesign design_trial(const ScenarioConfig &cfg, Method method, const TrialSeeds &seeds)
{
    const auto tr = cfg.subchannel(Link::TR);
    const auto ti = cfg.subchannel(Link::TI);
    const auto ir = cfg.subchannel(Link::IR);

    TrialDesign out;
    Rng rng(seeds.channel);
    out.channel = generate_channel(tr, ti, ir, rng);
    const auto &chan = out.channel;

    // Stage 1: RF beamformers from the angle supports of all three links; every method,
    // including no_ris, shares them so only the end-to-end channel differs.
    const AngleSupports supports = build_angle_supports(tr, ti, ir);
    const auto rx_paths = receive_dirs({&chan.paths_ir, &chan.paths_tr});
    const auto tx_paths = transmit_dirs({&chan.paths_ti, &chan.paths_tr});

    const auto tx_sel = select_pairs(quantized_grid(cfg.tx_array), supports.aod, tx_paths, cfg.n_t,
                                     cfg.support_step_deg);
    const auto rx_sel = select_pairs(quantized_grid(cfg.rx_array), supports.aoa, rx_paths, cfg.n_r,
                                     cfg.support_step_deg);
    out.rf_padded = tx_sel.padded || rx_sel.padded;
    out.tx_rf = build_rf_beamformer(cfg.tx_array, tx_sel.pairs, cfg.spacing);
    out.rx_rf = build_rf_beamformer(cfg.rx_array, rx_sel.pairs, cfg.spacing);
    out.beamformers.f_t = out.tx_rf.matrix;
    out.beamformers.f_r = out.rx_rf.matrix.adjoint();

    // Stage 3: RIS phases.
    const int m_i = cfg.ris_array.total();
    switch (method)
    {
    case Method::Pso: {
        const FitnessContext context(chan, out.beamformers.f_t, out.beamformers.f_r, cfg.link_budget());
        SwarmConfig swarm_cfg = cfg.pso;
        swarm_cfg.seed = seeds.method;
        out.swarm = pso_optimize(swarm_cfg, context);
        out.phases = out.swarm->best.canonical();
        break;
    }
    case Method::Random:
        out.phases = random_phases(m_i, seeds.method);
        break;
    case Method::Constant:
        out.phases = constant_phases(m_i, cfg.constant_phase);
        break;
    case Method::NoRis:
        break;
    }

    // Stage 2: baseband precoder/combiner for the final channel.
    const ComplexMatrix h = method == Method::NoRis ? chan.h_tr : compose_end_to_end(chan, out.phases);
    const ComplexMatrix eff = effective_channel(out.beamformers.f_r, h, out.beamformers.f_t);
    try
    {
        const auto bb = design_baseband(eff, cfg.noise_power(), cfg.total_power(), cfg.n_s);
        out.beamformers.b_t = bb.b_t;
        out.beamformers.b_r = bb.b_r;
        out.rate = bb.rate;
    }
    catch (const RankDeficientError &)
    {
        out.rank_deficient = true;
    }
    catch (const std::domain_error &)
    {
        out.rank_deficient = true;
    }
    return out;
}

ResultRow run_trial(const ScenarioConfig &cfg, Method method, const TrialSeeds &seeds)
{
    const auto design = design_trial(cfg, method, seeds);
    ResultRow row;
    row.method = method;
    row.seed = seeds.method;
    row.rate = design.rank_deficient ? 0.0 : design.rate;

    std::string flag;
    if (design.rank_deficient)
        flag = "rank_deficient";
    if (design.rf_padded)
        flag += flag.empty() ? "rf_padded" : "|rf_padded";
    row.flag = flag.empty() ? "ok" : flag;

    if (design.swarm)
    {
        row.pso_initial = design.swarm->initial_best;
        row.pso_final = design.swarm->best_fitness;
        row.pso_iterations = static_cast<int>(design.swarm->trace.size());
        row.trace = design.swarm->trace;
    }
    return row;
}

const Aggregate &SweepResult::aggregate(double sweep_value, Method method) const
{
    for (const auto &a : aggregates)
        if (a.sweep_value == sweep_value && a.method == method)
            return a;
    throw std::out_of_range("no aggregate for method " + std::string(to_string(method)) + " at sweep value " +
                            std::to_string(sweep_value));
}

std::vector<Aggregate> aggregate_rows(const std::vector<ResultRow> &rows)
{
    std::vector<Aggregate> out;
    std::vector<std::vector<double>> samples;
    for (const auto &r : rows)
    {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Aggregate &a) { return a.sweep_value == r.sweep_value && a.method == r.method; });
        if (it == out.end())
        {
            out.push_back({r.sweep_value, r.method, 0, 0, 0.0, 0.0});
            samples.emplace_back();
            it = std::prev(out.end());
        }
        const auto k = static_cast<std::size_t>(std::distance(out.begin(), it));
        samples[k].push_back(r.rate);
        it->trials += 1;
        it->flagged += r.flag.find("rank_deficient") != std::string::npos ? 1 : 0;
    }
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        const auto &s = samples[k];
        double sum = 0.0;
        for (double x : s)
            sum += x;
        const double mean = sum / static_cast<double>(s.size());
        double ss = 0.0;
        for (double x : s)
            ss += (x - mean) * (x - mean);
        out[k].mean = mean;
        out[k].stddev = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;
    }
    return out;
}

SweepResult run_sweep(const ScenarioConfig &cfg, const SweepSpec &sweep)
{
    sweep.validate();
    cfg.validate();

    std::vector<ScenarioConfig> point_cfgs;
    for (double v : sweep.values)
    {
        auto c = apply_sweep_value(cfg, sweep.variable, v);
        c.validate();
        point_cfgs.push_back(std::move(c));
    }

    struct Job
    {
        std::size_t sweep_index;
        Method method;
        int trial;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < sweep.values.size(); ++s)
        for (auto m : cfg.methods)
            for (int t = 0; t < cfg.num_trials; ++t)
                jobs.push_back({s, m, t});

    SweepResult result;
    result.rows.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        while (true)
        {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size())
                return;
            const auto &job = jobs[k];
            try
            {
                const auto seeds = derive_trial_seeds(cfg.master_seed, job.sweep_index, job.method, job.trial);
                auto row = run_trial(point_cfgs[job.sweep_index], job.method, seeds);
                row.sweep_var = std::string(to_string(sweep.variable));
                row.sweep_value = sweep.values[job.sweep_index];
                row.sweep_index = job.sweep_index;
                row.trial = job.trial;
                result.rows[k] = std::move(row);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(jobs.size());
            }
        }
    };

    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), jobs.size());
    if (n_workers <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    result.aggregates = aggregate_rows(result.rows);
    return result;
}

namespace
{
std::string fmt_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
} // namespace

std::string format_results(const std::vector<ResultRow> &rows)
{
    std::ostringstream out;
    out << kResultsHeader << '\n';
    for (const auto &r : rows)
        out << r.sweep_var << ',' << fmt_number(r.sweep_value) << ',' << to_string(r.method) << ',' << r.trial << ','
            << r.seed << ',' << fmt_number(r.rate) << ',' << r.flag << '\n';
    return out.str();
}

void write_results(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << format_results(rows);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing results to " + path.string());
}

void write_trace(const std::vector<double> &trace, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "iteration,fitness\n";
    for (std::size_t q = 0; q < trace.size(); ++q)
        out << (q + 1) << ',' << fmt_number(trace[q]) << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing trace to " + path.string());
}

} // namespace rishbf
