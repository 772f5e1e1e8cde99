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

#ifndef RISHBF_RF_BEAMFORMER_HPP
#define RISHBF_RF_BEAMFORMER_HPP

#include "rishbf/channel.hpp"

#include <span>
#include <vector>

namespace rishbf
{

// Closed interval of angles in degrees.
struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Interval &) const = default;
};

// Sorts and merges overlapping (or touching) closed intervals.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

// Elevation and azimuth angle sets of one side of the link. The support is the
// image of elevation x azimuth under direction_coeffs. mean_directions holds the
// direction coefficients of every contributing cluster mean; pair ranking uses them
// as a tie-break.
struct AngleSupport
{
    std::vector<Interval> elevation;
    std::vector<Interval> azimuth;
    std::vector<DirectionCoeffs> mean_directions;
};

struct AngleSupports
{
    AngleSupport aoa; // receive side: IR and TR arrivals
    AngleSupport aod; // transmit side: TI and TR departures
};

AngleSupports build_angle_supports(const SubchannelSpec &tr, const SubchannelSpec &ti, const SubchannelSpec &ir);

// Support of a single sub-channel's arrival or departure side.
AngleSupport receive_support(const SubchannelSpec &spec);
AngleSupport transmit_support(const SubchannelSpec &spec);

// (gamma_x, gamma_y) image of the support sampled on a step_deg grid over every
// elevation x azimuth interval pair, interval end points included.
std::vector<DirectionCoeffs> sample_support_image(const AngleSupport &support, double step_deg = 1.0);

// Grid point (m, n), 1-based, with kappa_x = (2m-1)/nx - 1 and kappa_y = (2n-1)/ny - 1.
struct QuantizedPair
{
    int m = 1;
    int n = 1;
    double kappa_x = 0.0;
    double kappa_y = 0.0;
    double score = 0.0; // realized paths inside the cell
};

struct QuantizedGrid
{
    UpaSize size;
    std::vector<QuantizedPair> pairs; // m-major order
};

QuantizedGrid quantized_grid(const UpaSize &size);

struct PairSelection
{
    std::vector<QuantizedPair> pairs;
    // Fewer cells intersected the support than the budget; the remainder was
    // filled with the cells closest to the support.
    bool padded = false;
};

// Picks `budget` grid cells whose quantization cell intersects the support.
// Ranking: realized path count inside the cell (descending), then distance from
// the cell center to the nearest cluster-mean direction, then (m, n).
PairSelection select_pairs(const QuantizedGrid &grid, const AngleSupport &support,
                           std::span<const DirectionCoeffs> paths, int budget, double step_deg = 1.0);

struct RfBeamformer
{
    ComplexMatrix matrix; // M x N, columns are unit-norm steering vectors
    std::vector<QuantizedPair> pairs;
};

// Column k is phase_response_vector(size, kappa_k, spacing) / sqrt(M).
RfBeamformer build_rf_beamformer(const UpaSize &size, std::span<const QuantizedPair> pairs, double spacing);

} // namespace rishbf

#endif
