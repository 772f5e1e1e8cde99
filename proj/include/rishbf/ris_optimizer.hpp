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

#ifndef RISHBF_RIS_OPTIMIZER_HPP
#define RISHBF_RIS_OPTIMIZER_HPP

#include "rishbf/baseband.hpp"
#include "rishbf/channel.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rishbf
{

struct LinkBudget
{
    double noise_power = 1.0; // watts
    double total_power = 1.0; // watts
    int num_streams = 1;
};

struct FitnessResult
{
    double rate = 0.0;
    bool rank_deficient = false;
};

// Everything the rate depends on besides the RIS phases. The RF stages are folded
// into the sub-channels once, so an evaluation only touches N_R x M_I and M_I x N_T
// blocks: H_eff(omega) = (F_r H_IR) diag(exp(j omega)) (H_TI F_t) + F_r H_TR F_t.
class FitnessContext
{
  public:
    // f_t is M_T x N_T; f_r is N_R x M_R.
    FitnessContext(const ChannelRealization &chan, const ComplexMatrix &f_t, const ComplexMatrix &f_r,
                   LinkBudget budget);

    int ris_elements() const { return static_cast<int>(rx_ris_.cols()); }
    const LinkBudget &budget() const { return budget_; }

    ComplexMatrix effective_channel(std::span<const double> omega) const;

    // Rate of the full baseband design for these phases; rank deficiency yields rate 0 and a flag.
    FitnessResult evaluate(std::span<const double> omega) const;

  private:
    ComplexMatrix rx_ris_; // F_r H_IR
    ComplexMatrix ris_tx_; // H_TI F_t
    ComplexMatrix direct_; // F_r H_TR F_t
    LinkBudget budget_;
};

double fitness(const PhaseConfig &phases, const FitnessContext &context);

struct SwarmConfig
{
    int num_particles = 100;
    int num_iterations = 200;
    double inertia = 0.729;
    double accel_personal = 1.49445;
    double accel_social = 1.49445;
    double velocity_clamp = 0.25 * kTwoPi;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SwarmResult
{
    PhaseConfig best;
    double best_fitness = 0.0;
    std::vector<double> trace; // global-best fitness after each iteration
    double initial_best = 0.0; // best fitness of the initial swarm
    std::size_t evaluations = 0;
    std::size_t failed_evaluations = 0; // rank-deficient candidates (context overload only)
};

using Objective = std::function<double(std::span<const double>)>;

// Particle swarm over a phase torus of the given dimension, maximizing the objective.
// Each particle draws from its own engine seeded from (seed, particle index).
SwarmResult pso_optimize(const SwarmConfig &cfg, int dimensions, const Objective &objective);
SwarmResult pso_optimize(const SwarmConfig &cfg, const FitnessContext &context);

PhaseConfig random_phases(int m_i, std::uint64_t seed);
PhaseConfig constant_phases(int m_i, double value = 0.0);

struct ExhaustiveResult
{
    PhaseConfig best;
    double best_fitness = 0.0;
};

// Maximum over every phase vector with entries in {2 pi k / levels}. Throws when levels^m_i > 1e7.
ExhaustiveResult exhaustive_search(int m_i, int levels, const Objective &objective);
ExhaustiveResult exhaustive_search(int m_i, int levels, const FitnessContext &context);

} // namespace rishbf

#endif
