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

#ifndef RISHBF_CHANNEL_HPP
#define RISHBF_CHANNEL_HPP

#include "rishbf/types.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace rishbf
{

// Sub-channel labels: Tx->Rx direct link, Tx->RIS and RIS->Rx.
enum class Link
{
    TR,
    TI,
    IR
};

std::string_view to_string(Link link);

// Mean and spread of the elevation/azimuth AoA and AoD of one scattering cluster, degrees.
struct AngularCluster
{
    double mean_elev_aoa = 0.0;
    double spread_elev_aoa = 0.0;
    double mean_azim_aoa = 0.0;
    double spread_azim_aoa = 0.0;
    double mean_elev_aod = 0.0;
    double spread_elev_aod = 0.0;
    double mean_azim_aod = 0.0;
    double spread_azim_aod = 0.0;
    int num_paths = 1;

    void validate() const;
};

struct SubchannelSpec
{
    Link label = Link::TR;
    std::vector<AngularCluster> clusters;
    double distance = 1.0;           // meters
    double path_loss_exponent = 2.0; // eta
    UpaSize tx_array;
    UpaSize rx_array;
    double ref_loss_db = 30.0; // loss at 1 m
    double spacing = 0.5;      // element spacing in wavelengths

    int total_paths() const;
    void validate() const;
};

// One path's angles in degrees: receive side (elevation, azimuth), then transmit side.
struct PathAngles
{
    double elev_aoa = 0.0;
    double azim_aoa = 0.0;
    double elev_aod = 0.0;
    double azim_aod = 0.0;
};

// Direction coefficients (gamma_x, gamma_y) of a path, each in [-1, 1].
struct DirectionCoeffs
{
    double x = 0.0;
    double y = 0.0;
};

struct PathRealization
{
    DirectionCoeffs rx;
    DirectionCoeffs tx;
    Complex gain{0.0, 0.0};
};

struct Subchannel
{
    ComplexMatrix matrix;
    std::vector<PathRealization> paths;
};

struct ChannelRealization
{
    ComplexMatrix h_tr; // M_R x M_T
    ComplexMatrix h_ti; // M_I x M_T
    ComplexMatrix h_ir; // M_R x M_I
    std::vector<PathRealization> paths_tr;
    std::vector<PathRealization> paths_ti;
    std::vector<PathRealization> paths_ir;
};

// Linear power gain 10^(-ref_loss_db/10) * distance^(-exponent). Throws std::domain_error for distance <= 0.
double path_loss(double distance, double exponent, double ref_loss_db);

// Draws num_paths angle tuples, each angle uniform within mean +- spread.
std::vector<PathAngles> sample_path_angles(const AngularCluster &cluster, Rng &rng);

// (sin(elev) cos(azim), sin(elev) sin(azim)), angles in degrees.
DirectionCoeffs direction_coeffs(double elev_deg, double azim_deg);

// x-progression kron y-progression: entry (m, n) at index m*ny + n is exp(j 2 pi d (m gx + n gy)).
ComplexVector phase_response_vector(const UpaSize &size, DirectionCoeffs gamma, double spacing);

// Sum of rank-one path terms gain * phi_rx * phi_tx^H.
ComplexMatrix assemble_subchannel(const UpaSize &tx_array, const UpaSize &rx_array,
                                  std::span<const PathRealization> paths, double spacing);

// Draws path angles and CN(0, beta/Z) gains for every cluster and assembles the matrix.
Subchannel generate_subchannel(const SubchannelSpec &spec, Rng &rng);

// Draws the three sub-channels in the order TR, TI, IR from one stream.
ChannelRealization generate_channel(const SubchannelSpec &tr, const SubchannelSpec &ti, const SubchannelSpec &ir,
                                    Rng &rng);

// H_IR * diag(exp(j omega)) * H_TI + H_TR.
ComplexMatrix compose_end_to_end(const ChannelRealization &chan, const PhaseConfig &phases);

} // namespace rishbf

#endif
