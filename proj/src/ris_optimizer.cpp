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

#include "rishbf/ris_optimizer.hpp"
#include "rishbf/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rishbf
{

FitnessContext::FitnessContext(const ChannelRealization &chan, const ComplexMatrix &f_t, const ComplexMatrix &f_r,
                               LinkBudget budget)
    : budget_(budget)
{
    if (f_t.rows() != chan.h_tr.cols() || f_r.cols() != chan.h_tr.rows() || chan.h_ti.rows() != chan.h_ir.cols())
        throw std::invalid_argument("FitnessContext: beamformers do not match the channel dimensions");
    rx_ris_ = f_r * chan.h_ir;
    ris_tx_ = chan.h_ti * f_t;
    direct_ = f_r * chan.h_tr * f_t;
}

ComplexMatrix FitnessContext::effective_channel(std::span<const double> omega) const
{
    if (static_cast<Eigen::Index>(omega.size()) != rx_ris_.cols())
        throw std::invalid_argument("FitnessContext: expected " + std::to_string(rx_ris_.cols()) +
                                    " phases, got " + std::to_string(omega.size()));
    ComplexMatrix weighted = rx_ris_;
    for (Eigen::Index i = 0; i < weighted.cols(); ++i)
        weighted.col(i) *= std::polar(1.0, omega[static_cast<std::size_t>(i)]);
    return weighted * ris_tx_ + direct_;
}

FitnessResult FitnessContext::evaluate(std::span<const double> omega) const
{
    const ComplexMatrix eff = effective_channel(omega);
    try
    {
        return {design_baseband(eff, budget_.noise_power, budget_.total_power, budget_.num_streams).rate, false};
    }
    catch (const RankDeficientError &)
    {
        return {0.0, true};
    }
    catch (const std::domain_error &)
    {
        return {0.0, true};
    }
}

double fitness(const PhaseConfig &phases, const FitnessContext &context)
{
    return context.evaluate(phases.omega).rate;
}

void SwarmConfig::validate() const
{
    if (num_particles < 1)
        throw std::invalid_argument("swarm needs at least one particle");
    if (num_iterations < 0)
        throw std::invalid_argument("iteration count must be non-negative");
    if (!(inertia > 0.0 && inertia <= 1.0))
        throw std::invalid_argument("inertia must lie in (0, 1]");
    if (!(accel_personal > 0.0) || !(accel_social > 0.0))
        throw std::invalid_argument("acceleration constants must be positive");
    if (!(velocity_clamp > 0.0))
        throw std::invalid_argument("velocity clamp must be positive");
}

namespace
{

struct Particle
{
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = 0.0;
    Rng rng;
};

// Signed shortest arc from `from` to `to`, in [-pi, pi].
double arc(double to, double from) { return std::remainder(to - from, kTwoPi); }

} // namespace

SwarmResult pso_optimize(const SwarmConfig &cfg, int dimensions, const Objective &objective)
{
    cfg.validate();
    if (dimensions < 0)
        throw std::invalid_argument("pso_optimize: negative dimension");

    const auto dims = static_cast<std::size_t>(dimensions);
    const double v0 = 0.1 * kTwoPi;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::uniform_real_distribution<double> init_vel(-v0, v0);

    SwarmResult result;
    std::vector<Particle> swarm(static_cast<std::size_t>(cfg.num_particles));
    for (std::size_t i = 0; i < swarm.size(); ++i)
    {
        auto &p = swarm[i];
        p.rng.seed(derive_seed(cfg.seed, {i}));
        p.position.resize(dims);
        p.velocity.resize(dims);
        for (std::size_t d = 0; d < dims; ++d)
            p.position[d] = phase(p.rng);
        for (std::size_t d = 0; d < dims; ++d)
            p.velocity[d] = init_vel(p.rng);
    }

    std::vector<double> fit(swarm.size());
    const auto evaluate_all = [&] {
        // Evaluations are independent; the update below is the serial barrier.
        for (std::size_t i = 0; i < swarm.size(); ++i)
            fit[i] = objective(swarm[i].position);
        result.evaluations += swarm.size();
    };

    evaluate_all();
    std::size_t g = 0;
    for (std::size_t i = 0; i < swarm.size(); ++i)
    {
        swarm[i].best_position = swarm[i].position;
        swarm[i].best_fitness = fit[i];
        if (fit[i] > fit[g])
            g = i;
    }
    std::vector<double> global_best = swarm[g].position;
    double global_fitness = fit[g];
    result.initial_best = global_fitness;

    result.trace.reserve(static_cast<std::size_t>(cfg.num_iterations));
    for (int q = 0; q < cfg.num_iterations; ++q)
    {
        for (auto &p : swarm)
        {
            const double u1 = unit(p.rng);
            const double u2 = unit(p.rng);
            for (std::size_t d = 0; d < dims; ++d)
            {
                double v = cfg.inertia * p.velocity[d] +
                           u1 * cfg.accel_personal * arc(p.best_position[d], p.position[d]) +
                           u2 * cfg.accel_social * arc(global_best[d], p.position[d]);
                v = std::clamp(v, -cfg.velocity_clamp, cfg.velocity_clamp);
                p.velocity[d] = v;
                p.position[d] = wrap_phase(p.position[d] + v);
            }
        }

        evaluate_all();
        std::size_t improved = swarm.size();
        for (std::size_t i = 0; i < swarm.size(); ++i)
        {
            auto &p = swarm[i];
            if (fit[i] > p.best_fitness)
            {
                p.best_fitness = fit[i];
                p.best_position = p.position;
            }
            if (p.best_fitness > global_fitness)
            {
                global_fitness = p.best_fitness;
                improved = i;
            }
        }
        if (improved != swarm.size())
            global_best = swarm[improved].best_position;
        result.trace.push_back(global_fitness);
    }

    result.best.omega = global_best;
    result.best_fitness = global_fitness;
    return result;
}

SwarmResult pso_optimize(const SwarmConfig &cfg, const FitnessContext &context)
{
    std::size_t failed = 0;
    auto result = pso_optimize(cfg, context.ris_elements(), [&](std::span<const double> omega) {
        const auto r = context.evaluate(omega);
        failed += r.rank_deficient ? 1 : 0;
        return r.rate;
    });
    result.failed_evaluations = failed;
    return result;
}

PhaseConfig random_phases(int m_i, std::uint64_t seed)
{
    if (m_i < 0)
        throw std::invalid_argument("random_phases: negative element count");
    Rng rng(seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    PhaseConfig out;
    out.omega.resize(static_cast<std::size_t>(m_i));
    for (auto &w : out.omega)
        w = phase(rng);
    return out;
}

PhaseConfig constant_phases(int m_i, double value)
{
    if (m_i < 0)
        throw std::invalid_argument("constant_phases: negative element count");
    return PhaseConfig{std::vector<double>(static_cast<std::size_t>(m_i), value)};
}

ExhaustiveResult exhaustive_search(int m_i, int levels, const Objective &objective)
{
    constexpr double kMaxGrid = 1e7;
    if (m_i < 0 || levels < 1)
        throw std::invalid_argument("exhaustive_search: need m_i >= 0 and levels >= 1");
    double grid = 1.0;
    for (int i = 0; i < m_i; ++i)
    {
        grid *= levels;
        if (grid > kMaxGrid)
            throw std::invalid_argument("exhaustive_search: " + std::to_string(levels) + "^" + std::to_string(m_i) +
                                        " grid points exceed the 1e7 limit");
    }

    const auto dims = static_cast<std::size_t>(m_i);
    std::vector<int> digit(dims, 0);
    std::vector<double> omega(dims, 0.0);
    const double step = kTwoPi / levels;

    ExhaustiveResult best;
    best.best.omega = omega;
    best.best_fitness = objective(omega);
    while (true)
    {
        std::size_t d = 0;
        while (d < dims && ++digit[d] == levels)
        {
            digit[d] = 0;
            omega[d] = 0.0;
            ++d;
        }
        if (d == dims)
            break;
        omega[d] = step * digit[d];
        const double f = objective(omega);
        if (f > best.best_fitness)
        {
            best.best_fitness = f;
            best.best.omega = omega;
        }
    }
    return best;
}

ExhaustiveResult exhaustive_search(int m_i, int levels, const FitnessContext &context)
{
    return exhaustive_search(m_i, levels, [&](std::span<const double> omega) { return context.evaluate(omega).rate; });
}

} // namespace rishbf
