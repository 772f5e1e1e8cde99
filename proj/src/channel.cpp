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

#include "rishbf/channel.hpp"

#include <cmath>
#include <string>

namespace rishbf
{

double wrap_phase(double radians)
{
    double w = std::fmod(radians, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    // fmod of a tiny negative number can round up to exactly 2*pi
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

PhaseConfig PhaseConfig::canonical() const
{
    PhaseConfig out;
    out.omega.reserve(omega.size());
    for (double w : omega)
        out.omega.push_back(wrap_phase(w));
    return out;
}

ComplexVector PhaseConfig::reflection() const
{
    ComplexVector theta(static_cast<Eigen::Index>(omega.size()));
    for (std::size_t i = 0; i < omega.size(); ++i)
        theta(static_cast<Eigen::Index>(i)) = std::polar(1.0, omega[i]);
    return theta;
}

std::string_view to_string(Link link)
{
    switch (link)
    {
    case Link::TR:
        return "TR";
    case Link::TI:
        return "TI";
    case Link::IR:
        return "IR";
    }
    return "?";
}

void AngularCluster::validate() const
{
    if (spread_elev_aoa < 0.0 || spread_azim_aoa < 0.0 || spread_elev_aod < 0.0 || spread_azim_aod < 0.0)
        throw std::invalid_argument("angular spreads must be non-negative");
    if (num_paths < 1)
        throw std::invalid_argument("a cluster needs at least one path");
}

int SubchannelSpec::total_paths() const
{
    int z = 0;
    for (const auto &c : clusters)
        z += c.num_paths;
    return z;
}

void SubchannelSpec::validate() const
{
    const std::string name(to_string(label));
    if (clusters.empty())
        throw std::invalid_argument("sub-channel " + name + " has no clusters");
    if (!(distance > 0.0))
        throw std::invalid_argument("sub-channel " + name + " distance must be positive");
    if (!(path_loss_exponent > 0.0))
        throw std::invalid_argument("sub-channel " + name + " path-loss exponent must be positive");
    tx_array.validate();
    rx_array.validate();
    for (const auto &c : clusters)
        c.validate();
}

double path_loss(double distance, double exponent, double ref_loss_db)
{
    if (!(distance > 0.0))
        throw std::domain_error("path_loss: distance must be positive, got " + std::to_string(distance));
    return std::pow(10.0, -ref_loss_db / 10.0) * std::pow(distance, -exponent);
}

namespace
{
double draw_within(double mean, double spread, Rng &rng)
{
    if (spread == 0.0)
        return mean;
    std::uniform_real_distribution<double> dist(mean - spread, mean + spread);
    return dist(rng);
}
} // namespace

std::vector<PathAngles> sample_path_angles(const AngularCluster &cluster, Rng &rng)
{
    std::vector<PathAngles> out;
    out.reserve(static_cast<std::size_t>(cluster.num_paths));
    for (int p = 0; p < cluster.num_paths; ++p)
    {
        PathAngles a;
        a.elev_aoa = draw_within(cluster.mean_elev_aoa, cluster.spread_elev_aoa, rng);
        a.azim_aoa = draw_within(cluster.mean_azim_aoa, cluster.spread_azim_aoa, rng);
        a.elev_aod = draw_within(cluster.mean_elev_aod, cluster.spread_elev_aod, rng);
        a.azim_aod = draw_within(cluster.mean_azim_aod, cluster.spread_azim_aod, rng);
        out.push_back(a);
    }
    return out;
}

DirectionCoeffs direction_coeffs(double elev_deg, double azim_deg)
{
    const double s = std::sin(deg2rad(elev_deg));
    const double psi = deg2rad(azim_deg);
    return {s * std::cos(psi), s * std::sin(psi)};
}

ComplexVector phase_response_vector(const UpaSize &size, DirectionCoeffs gamma, double spacing)
{
    size.validate();
    ComplexVector v(size.total());
    const double kx = kTwoPi * spacing * gamma.x;
    const double ky = kTwoPi * spacing * gamma.y;
    for (int m = 0; m < size.nx; ++m)
        for (int n = 0; n < size.ny; ++n)
            v(m * size.ny + n) = std::polar(1.0, kx * m + ky * n);
    return v;
}

ComplexMatrix assemble_subchannel(const UpaSize &tx_array, const UpaSize &rx_array,
                                  std::span<const PathRealization> paths, double spacing)
{
    ComplexMatrix h = ComplexMatrix::Zero(rx_array.total(), tx_array.total());
    for (const auto &p : paths)
    {
        const ComplexVector phi_r = phase_response_vector(rx_array, p.rx, spacing);
        const ComplexVector phi_t = phase_response_vector(tx_array, p.tx, spacing);
        h.noalias() += p.gain * phi_r * phi_t.adjoint();
    }
    return h;
}

Subchannel generate_subchannel(const SubchannelSpec &spec, Rng &rng)
{
    spec.validate();
    const double beta = path_loss(spec.distance, spec.path_loss_exponent, spec.ref_loss_db);
    const int z_total = spec.total_paths();
    // CN(0, beta/Z): real and imaginary parts each carry half the variance
    std::normal_distribution<double> gauss(0.0, std::sqrt(beta / z_total / 2.0));

    Subchannel out;
    out.paths.reserve(static_cast<std::size_t>(z_total));
    for (const auto &cluster : spec.clusters)
    {
        for (const auto &a : sample_path_angles(cluster, rng))
        {
            PathRealization p;
            p.rx = direction_coeffs(a.elev_aoa, a.azim_aoa);
            p.tx = direction_coeffs(a.elev_aod, a.azim_aod);
            const double re = gauss(rng);
            const double im = gauss(rng);
            p.gain = {re, im};
            out.paths.push_back(p);
        }
    }
    out.matrix = assemble_subchannel(spec.tx_array, spec.rx_array, out.paths, spec.spacing);
    return out;
}

ChannelRealization generate_channel(const SubchannelSpec &tr, const SubchannelSpec &ti, const SubchannelSpec &ir,
                                    Rng &rng)
{
    if (!(tr.tx_array == ti.tx_array) || !(tr.rx_array == ir.rx_array) || !(ti.rx_array == ir.tx_array))
        throw std::invalid_argument("generate_channel: array sizes of TR, TI and IR are inconsistent");

    ChannelRealization chan;
    auto s_tr = generate_subchannel(tr, rng);
    auto s_ti = generate_subchannel(ti, rng);
    auto s_ir = generate_subchannel(ir, rng);
    chan.h_tr = std::move(s_tr.matrix);
    chan.h_ti = std::move(s_ti.matrix);
    chan.h_ir = std::move(s_ir.matrix);
    chan.paths_tr = std::move(s_tr.paths);
    chan.paths_ti = std::move(s_ti.paths);
    chan.paths_ir = std::move(s_ir.paths);
    return chan;
}

ComplexMatrix compose_end_to_end(const ChannelRealization &chan, const PhaseConfig &phases)
{
    const auto m_i = chan.h_ti.rows();
    if (static_cast<Eigen::Index>(phases.size()) != m_i || chan.h_ir.cols() != m_i)
        throw std::invalid_argument("compose_end_to_end: phase vector length " + std::to_string(phases.size()) +
                                    " does not match RIS size " + std::to_string(m_i));
    if (chan.h_ir.rows() != chan.h_tr.rows() || chan.h_ti.cols() != chan.h_tr.cols())
        throw std::invalid_argument("compose_end_to_end: sub-channel dimensions are inconsistent");

    return chan.h_ir * phases.reflection().asDiagonal() * chan.h_ti + chan.h_tr;
}

} // namespace rishbf
