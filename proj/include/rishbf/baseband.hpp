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

#ifndef RISHBF_BASEBAND_HPP
#define RISHBF_BASEBAND_HPP

#include "rishbf/types.hpp"

#include <span>

namespace rishbf
{

// Thermal noise power in watts for a PSD in dBm/Hz over the given bandwidth.
double noise_power_watt(double psd_dbm_hz, double bandwidth_hz);

// F_r * H * F_t, N_R x N_T. f_r is N_R x M_R (the adjoint of the receive RF beamformer).
ComplexMatrix effective_channel(const ComplexMatrix &f_r, const ComplexMatrix &h, const ComplexMatrix &f_t);

struct PowerAllocation
{
    RealVector gamma;          // per-stream power, sums to the total power
    double water_level = 0.0;  // mu
};

// Gamma_n = max(0, mu - noise / (total_power * sigma_n^2)) with sum(Gamma) = total_power,
// over the first num_streams entries of singular_values.
PowerAllocation water_filling(std::span<const double> singular_values, double noise_power, double total_power,
                              int num_streams);

struct Precoder
{
    ComplexMatrix b_t;            // N_T x N_S, V_1 * diag(sqrt(Gamma))
    RealVector singular_values;   // all min(N_R, N_T) values, non-increasing
    ComplexMatrix u;              // thin left singular vectors
    ComplexMatrix v;              // thin right singular vectors, phase-normalized
    PowerAllocation allocation;
    int rank = 0;
};

// Numerical rank used throughout: singular values above max(rows, cols) * eps * sigma_max.
int numerical_rank(const RealVector &singular_values, Eigen::Index rows, Eigen::Index cols);

// SVD precoder with water-filling. Throws RankDeficientError when rank(eff) < num_streams.
Precoder bb_precoder(const ComplexMatrix &eff, double noise_power, double total_power, int num_streams);

// B_t^H H^H (H B_t B_t^H H^H)^{-1}, with the pseudo-inverse when N_R > N_S.
// Throws RankDeficientError when rank(eff * b_t) < N_S.
ComplexMatrix mmse_combiner(const ComplexMatrix &eff, const ComplexMatrix &b_t);

struct BeamformerSet
{
    ComplexMatrix f_t; // M_T x N_T
    ComplexMatrix f_r; // N_R x M_R
    ComplexMatrix b_t; // N_T x N_S
    ComplexMatrix b_r; // N_S x N_R
};

// log2 det(I + R_w^{-1} B_r H B_t B_t^H H^H B_r^H), R_w = noise * B_r F_r F_r^H B_r^H.
// Throws std::domain_error when R_w is singular.
double achievable_rate(const BeamformerSet &set, const ComplexMatrix &eff, double noise_power);

// Same quantity with F_r F_r^H = I assumed, so only B_r, B_t enter.
double achievable_rate(const ComplexMatrix &b_r, const ComplexMatrix &eff, const ComplexMatrix &b_t,
                       double noise_power);

// Baseband stage for one effective channel: SVD precoder, water-filling, MMSE combiner and rate,
// with F_r F_r^H = I. Streams that water-filling switches off (Gamma_n = 0) keep a zero column in
// b_t and a zero row in b_r and are excluded from the combiner and the rate.
struct BasebandDesign
{
    Precoder precoder;
    ComplexMatrix b_t; // N_T x N_S
    ComplexMatrix b_r; // N_S x N_R
    int active_streams = 0;
    double rate = 0.0; // bits/s/Hz
};

BasebandDesign design_baseband(const ComplexMatrix &eff, double noise_power, double total_power, int num_streams);

} // namespace rishbf

#endif
