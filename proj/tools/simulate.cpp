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

// simulate --config <path> --sweep <var>=<v1,v2,...> --out <csv>
//          [--seed N] [--workers N] [--trials N] [--methods pso,random,constant,no_ris]
//          [--emit-trace <path>]

#include "rishbf/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

int main(int argc, char **argv)
{
    CLI::App app{"RIS-aided angular-based hybrid beamforming sweep runner"};

    std::string config_path;
    std::string sweep_text;
    std::string out_path;
    std::string trace_path;
    std::string methods_text;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<int> trials;

    app.add_option("--config", config_path, "Scenario file (INI sections, key = value)")->required();
    app.add_option("--sweep", sweep_text, "Sweep as <var>=<v1,v2,...>, var one of d1, dTR, PT, MI")->required();
    app.add_option("--out", out_path, "CSV output path")->required();
    app.add_option("--seed", seed, "Master seed (overrides [run] seed)");
    app.add_option("--workers", workers, "Worker threads (overrides [run] workers)");
    app.add_option("--trials", trials, "Monte Carlo trials per point (overrides [run] trials)");
    app.add_option("--methods", methods_text, "Comma-separated subset of pso,random,constant,no_ris");
    app.add_option("--emit-trace", trace_path, "Write the first PSO run's global-best trace as iteration,fitness");

    CLI11_PARSE(app, argc, argv);

    try
    {
        auto cfg = rishbf::load_scenario(config_path);
        if (seed)
            cfg.master_seed = *seed;
        if (workers)
            cfg.workers = *workers;
        if (trials)
            cfg.num_trials = *trials;
        if (!methods_text.empty())
        {
            cfg.methods.clear();
            std::stringstream ss(methods_text);
            std::string name;
            while (std::getline(ss, name, ','))
                if (!name.empty())
                    cfg.methods.push_back(rishbf::parse_method(name));
        }
        cfg.validate();
        const auto sweep = rishbf::parse_sweep(sweep_text);

        const auto result = rishbf::run_sweep(cfg, sweep);
        rishbf::write_results(result.rows, out_path);

        if (!trace_path.empty())
        {
            const auto first_pso = std::find_if(result.rows.begin(), result.rows.end(), [](const auto &r) {
                return r.method == rishbf::Method::Pso;
            });
            if (first_pso == result.rows.end())
                throw std::invalid_argument("--emit-trace requires the pso method");
            rishbf::write_trace(first_pso->trace, trace_path);
        }

        std::printf("%-10s %-10s %8s %14s %12s %8s\n", "sweep", "method", "trials", "mean_bps_hz", "stddev", "flagged");
        for (const auto &a : result.aggregates)
            std::printf("%-10g %-10s %8d %14.6f %12.6f %8d\n", a.sweep_value, std::string(to_string(a.method)).c_str(),
                        a.trials, a.mean, a.stddev, a.flagged);
    }
    catch (const std::exception &e)
    {
        std::cerr << "simulate: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
