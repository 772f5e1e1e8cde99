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

#include "rishbf/rf_beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

namespace rishbf
{

std::vector<Interval> merge_intervals(std::vector<Interval> intervals)
{
    for (const auto &iv : intervals)
        if (iv.lo > iv.hi)
            throw std::invalid_argument("interval lower bound exceeds upper bound");

    std::sort(intervals.begin(), intervals.end(),
              [](const Interval &a, const Interval &b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });

    std::vector<Interval> merged;
    for (const auto &iv : intervals)
    {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return merged;
}

namespace
{

void append_side(AngleSupport &support, const SubchannelSpec &spec, bool receive)
{
    for (const auto &c : spec.clusters)
    {
        const double elev = receive ? c.mean_elev_aoa : c.mean_elev_aod;
        const double elev_spread = receive ? c.spread_elev_aoa : c.spread_elev_aod;
        const double azim = receive ? c.mean_azim_aoa : c.mean_azim_aod;
        const double azim_spread = receive ? c.spread_azim_aoa : c.spread_azim_aod;
        support.elevation.push_back({elev - elev_spread, elev + elev_spread});
        support.azimuth.push_back({azim - azim_spread, azim + azim_spread});
        support.mean_directions.push_back(direction_coeffs(elev, azim));
    }
}

void finish(AngleSupport &support)
{
    support.elevation = merge_intervals(std::move(support.elevation));
    support.azimuth = merge_intervals(std::move(support.azimuth));
}

std::vector<double> sample_interval(const Interval &iv, double step)
{
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((iv.hi - iv.lo) / step));
    for (long k = 0; k <= count; ++k)
        out.push_back(iv.lo + static_cast<double>(k) * step);
    if (out.back() < iv.hi)
        out.push_back(iv.hi);
    return out;
}

double squared_distance(double ax, double ay, const DirectionCoeffs &b)
{
    const double dx = ax - b.x;
    const double dy = ay - b.y;
    return dx * dx + dy * dy;
}

} // namespace

AngleSupport receive_support(const SubchannelSpec &spec)
{
    AngleSupport s;
    append_side(s, spec, true);
    finish(s);
    return s;
}

AngleSupport transmit_support(const SubchannelSpec &spec)
{
    AngleSupport s;
    append_side(s, spec, false);
    finish(s);
    return s;
}

AngleSupports build_angle_supports(const SubchannelSpec &tr, const SubchannelSpec &ti, const SubchannelSpec &ir)
{
    AngleSupports out;
    append_side(out.aoa, ir, true);
    append_side(out.aoa, tr, true);
    append_side(out.aod, ti, false);
    append_side(out.aod, tr, false);
    finish(out.aoa);
    finish(out.aod);
    return out;
}

std::vector<DirectionCoeffs> sample_support_image(const AngleSupport &support, double step_deg)
{
    if (!(step_deg > 0.0))
        throw std::invalid_argument("support sampling step must be positive");

    std::vector<DirectionCoeffs> image;
    for (const auto &el : support.elevation)
    {
        const auto thetas = sample_interval(el, step_deg);
        for (const auto &az : support.azimuth)
        {
            const auto psis = sample_interval(az, step_deg);
            for (double theta : thetas)
                for (double psi : psis)
                    image.push_back(direction_coeffs(theta, psi));
        }
    }
    return image;
}

QuantizedGrid quantized_grid(const UpaSize &size)
{
    size.validate();
    QuantizedGrid grid{size, {}};
    grid.pairs.reserve(static_cast<std::size_t>(size.total()));
    for (int m = 1; m <= size.nx; ++m)
        for (int n = 1; n <= size.ny; ++n)
            grid.pairs.push_back({m, n, (2.0 * m - 1.0) / size.nx - 1.0, (2.0 * n - 1.0) / size.ny - 1.0, 0.0});
    return grid;
}

PairSelection select_pairs(const QuantizedGrid &grid, const AngleSupport &support,
                           std::span<const DirectionCoeffs> paths, int budget, double step_deg)
{
    if (budget < 1)
        throw std::invalid_argument("select_pairs: budget must be at least 1");
    if (budget > static_cast<int>(grid.pairs.size()))
        throw std::invalid_argument("select_pairs: budget " + std::to_string(budget) + " exceeds grid size " +
                                    std::to_string(grid.pairs.size()));

    constexpr double kEdgeTol = 1e-12;
    const double hx = 1.0 / grid.size.nx + kEdgeTol;
    const double hy = 1.0 / grid.size.ny + kEdgeTol;
    const auto in_cell = [&](const QuantizedPair &q, const DirectionCoeffs &g) {
        return std::abs(g.x - q.kappa_x) <= hx && std::abs(g.y - q.kappa_y) <= hy;
    };

    const auto image = sample_support_image(support, step_deg);

    struct Candidate
    {
        QuantizedPair pair;
        double mean_dist;
        double support_dist;
        bool hit;
    };
    std::vector<Candidate> cells;
    cells.reserve(grid.pairs.size());
    for (auto q : grid.pairs)
    {
        Candidate c{q, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false};
        for (const auto &g : image)
        {
            if (in_cell(q, g))
            {
                c.hit = true;
                break;
            }
            c.support_dist = std::min(c.support_dist, squared_distance(q.kappa_x, q.kappa_y, g));
        }
        for (const auto &g : support.mean_directions)
            c.mean_dist = std::min(c.mean_dist, squared_distance(q.kappa_x, q.kappa_y, g));
        c.pair.score = static_cast<double>(
            std::count_if(paths.begin(), paths.end(), [&](const DirectionCoeffs &g) { return in_cell(q, g); }));
        cells.push_back(c);
    }

    const auto by_key = [](const QuantizedPair &a, const QuantizedPair &b) {
        return std::pair(a.m, a.n) < std::pair(b.m, b.n);
    };
    auto split = std::stable_partition(cells.begin(), cells.end(), [](const Candidate &c) { return c.hit; });
    std::sort(cells.begin(), split, [&](const Candidate &a, const Candidate &b) {
        if (a.pair.score != b.pair.score)
            return a.pair.score > b.pair.score;
        if (a.mean_dist != b.mean_dist)
            return a.mean_dist < b.mean_dist;
        return by_key(a.pair, b.pair);
    });
    std::sort(split, cells.end(), [&](const Candidate &a, const Candidate &b) {
        if (a.support_dist != b.support_dist)
            return a.support_dist < b.support_dist;
        return by_key(a.pair, b.pair);
    });

    PairSelection out;
    out.padded = std::distance(cells.begin(), split) < budget;
    for (int k = 0; k < budget; ++k)
        out.pairs.push_back(cells[static_cast<std::size_t>(k)].pair);
    return out;
}

RfBeamformer build_rf_beamformer(const UpaSize &size, std::span<const QuantizedPair> pairs, double spacing)
{
    size.validate();
    if (pairs.empty())
        throw std::invalid_argument("build_rf_beamformer: at least one angle pair is required");

    std::set<std::pair<double, double>> seen;
    for (const auto &q : pairs)
        if (!seen.emplace(q.kappa_x, q.kappa_y).second)
            throw std::invalid_argument("build_rf_beamformer: duplicate angle pair (" + std::to_string(q.m) + ", " +
                                        std::to_string(q.n) + ")");

    RfBeamformer rf;
    rf.pairs.assign(pairs.begin(), pairs.end());
    rf.matrix.resize(size.total(), static_cast<Eigen::Index>(pairs.size()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(size.total()));
    for (std::size_t k = 0; k < pairs.size(); ++k)
        rf.matrix.col(static_cast<Eigen::Index>(k)) =
            scale * phase_response_vector(size, {pairs[k].kappa_x, pairs[k].kappa_y}, spacing);
    return rf;
}

} // namespace rishbf
