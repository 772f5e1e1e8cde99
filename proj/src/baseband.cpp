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

#include "rishbf/baseband.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace rishbf
{

double noise_power_watt(double psd_dbm_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    return dbm2watt(psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

ComplexMatrix effective_channel(const ComplexMatrix &f_r, const ComplexMatrix &h, const ComplexMatrix &f_t)
{
    if (f_r.cols() != h.rows() || h.cols() != f_t.rows())
        throw std::invalid_argument("effective_channel: non-conformable dimensions (" + std::to_string(f_r.rows()) +
                                    "x" + std::to_string(f_r.cols()) + ") * (" + std::to_string(h.rows()) + "x" +
                                    std::to_string(h.cols()) + ") * (" + std::to_string(f_t.rows()) + "x" +
                                    std::to_string(f_t.cols()) + ")");
    return f_r * h * f_t;
}

PowerAllocation water_filling(std::span<const double> singular_values, double noise_power, double total_power,
                              int num_streams)
{
    if (num_streams < 1)
        throw std::invalid_argument("water_filling: num_streams must be at least 1");
    if (static_cast<std::size_t>(num_streams) > singular_values.size())
        throw std::invalid_argument("water_filling: num_streams exceeds the number of singular values");
    if (!(total_power > 0.0))
        throw std::invalid_argument("water_filling: total power must be positive");
    if (noise_power < 0.0)
        throw std::invalid_argument("water_filling: noise power must be non-negative");

    const auto n = static_cast<std::size_t>(num_streams);
    std::vector<double> floor(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double s = singular_values[i];
        if (!(s > 0.0))
            throw std::invalid_argument("water_filling: singular values must be positive");
        floor[i] = noise_power / (total_power * s * s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return floor[a] < floor[b]; });

    // Largest active set whose weakest member still sits below the water level.
    double mu = 0.0;
    std::size_t active = 1;
    for (std::size_t k = n; k >= 1; --k)
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            acc += floor[order[i]];
        mu = (total_power + acc) / static_cast<double>(k);
        if (mu > floor[order[k - 1]] || k == 1)
        {
            active = k;
            break;
        }
    }

    // Gamma = P/k + mean(floor) - floor_n, summed as floor differences so a huge floor
    // does not cancel the power away.
    PowerAllocation out;
    out.water_level = mu;
    out.gamma = RealVector::Zero(num_streams);
    const auto k = static_cast<double>(active);
    for (std::size_t a = 0; a < active; ++a)
    {
        const std::size_t i = order[a];
        double diff = 0.0;
        for (std::size_t b = 0; b < active; ++b)
            diff += floor[order[b]] - floor[i];
        out.gamma(static_cast<Eigen::Index>(i)) = std::max(0.0, total_power / k + diff / k);
    }
    return out;
}

int numerical_rank(const RealVector &singular_values, Eigen::Index rows, Eigen::Index cols)
{
    if (singular_values.size() == 0 || !(singular_values(0) > 0.0))
        return 0;
    const double tol =
        static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * singular_values(0);
    return static_cast<int>((singular_values.array() > tol).count());
}

Precoder bb_precoder(const ComplexMatrix &eff, double noise_power, double total_power, int num_streams)
{
    if (num_streams < 1)
        throw std::invalid_argument("bb_precoder: num_streams must be at least 1");

    Eigen::JacobiSVD<ComplexMatrix> svd(eff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Precoder out;
    out.singular_values = svd.singularValues();
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.rank = numerical_rank(out.singular_values, eff.rows(), eff.cols());
    if (out.rank < num_streams)
        throw RankDeficientError("bb_precoder: effective channel cannot carry the requested streams", out.rank,
                                 num_streams);

    // Fix the per-column phase so the largest-magnitude entry of each right singular vector is real.
    for (Eigen::Index k = 0; k < out.v.cols(); ++k)
    {
        Eigen::Index idx = 0;
        out.v.col(k).cwiseAbs().maxCoeff(&idx);
        const Complex rot = std::polar(1.0, -std::arg(out.v(idx, k)));
        out.v.col(k) *= rot;
        out.u.col(k) *= rot;
    }

    const std::span<const double> sv(out.singular_values.data(), static_cast<std::size_t>(out.singular_values.size()));
    out.allocation = water_filling(sv, noise_power, total_power, num_streams);
    out.b_t = out.v.leftCols(num_streams) * out.allocation.gamma.cwiseSqrt().asDiagonal();
    return out;
}

ComplexMatrix mmse_combiner(const ComplexMatrix &eff, const ComplexMatrix &b_t)
{
    if (eff.cols() != b_t.rows())
        throw std::invalid_argument("mmse_combiner: effective channel and precoder are not conformable");
    const ComplexMatrix g = eff * b_t;
    const auto n_s = static_cast<int>(g.cols());
    if (g.rows() < g.cols())
        throw RankDeficientError("mmse_combiner: fewer receive RF chains than streams", static_cast<int>(g.rows()),
                                 n_s);

    Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int rank = numerical_rank(svd.singularValues(), g.rows(), g.cols());
    if (rank < n_s)
        throw RankDeficientError("mmse_combiner: H*B_t is rank deficient", rank, n_s);

    // G^H (G G^H)^{-1} equals the pseudo-inverse G^+ = V S^{-1} U^H for full column rank G
    // (and the plain inverse when G is square); the SVD form avoids squaring the condition number.
    return svd.matrixV() * svd.singularValues().cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

namespace
{

double log2_det_rate(const ComplexMatrix &signal, const ComplexMatrix &noise_cov)
{
    Eigen::LLT<ComplexMatrix> chol(noise_cov);
    const double scale = noise_cov.cwiseAbs().maxCoeff();
    if (chol.info() != Eigen::Success || !(scale > 0.0) ||
        chol.matrixLLT().diagonal().real().minCoeff() <= std::sqrt(scale) * 1e-12)
        throw std::domain_error("achievable_rate: noise covariance R_w is singular");

    // I + R_w^{-1} S S^H is similar to I + X X^H with X = L^{-1} S.
    const ComplexMatrix x = chol.matrixL().solve(signal);
    const ComplexMatrix m = ComplexMatrix::Identity(x.rows(), x.rows()) + x * x.adjoint();
    Eigen::LLT<ComplexMatrix> chol_m(m);
    double rate = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        rate += 2.0 * std::log2(chol_m.matrixLLT()(i, i).real());
    return std::max(0.0, rate);
}

} // namespace

double achievable_rate(const BeamformerSet &set, const ComplexMatrix &eff, double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::domain_error("achievable_rate: noise power must be positive");
    if (set.b_r.cols() != eff.rows() || eff.cols() != set.b_t.rows() || set.b_r.cols() != set.f_r.rows())
        throw std::invalid_argument("achievable_rate: non-conformable beamformers");
    const ComplexMatrix s = set.b_r * eff * set.b_t;
    const ComplexMatrix rw = noise_power * set.b_r * set.f_r * set.f_r.adjoint() * set.b_r.adjoint();
    return log2_det_rate(s, rw);
}

double achievable_rate(const ComplexMatrix &b_r, const ComplexMatrix &eff, const ComplexMatrix &b_t,
                       double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::domain_error("achievable_rate: noise power must be positive");
    if (b_r.cols() != eff.rows() || eff.cols() != b_t.rows())
        throw std::invalid_argument("achievable_rate: non-conformable beamformers");
    const ComplexMatrix s = b_r * eff * b_t;
    const ComplexMatrix rw = noise_power * b_r * b_r.adjoint();
    return log2_det_rate(s, rw);
}

BasebandDesign design_baseband(const ComplexMatrix &eff, double noise_power, double total_power, int num_streams)
{
    BasebandDesign out;
    out.precoder = bb_precoder(eff, noise_power, total_power, num_streams);
    out.b_t = out.precoder.b_t;
    out.b_r = ComplexMatrix::Zero(num_streams, eff.rows());

    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < num_streams; ++k)
        if (out.precoder.allocation.gamma(k) > 0.0)
            active.push_back(k);
    out.active_streams = static_cast<int>(active.size());
    if (active.empty())
        throw RankDeficientError("design_baseband: no stream received power", 0, num_streams);

    ComplexMatrix b_t_active(eff.cols(), out.active_streams);
    for (std::size_t i = 0; i < active.size(); ++i)
        b_t_active.col(static_cast<Eigen::Index>(i)) = out.b_t.col(active[i]);
    const ComplexMatrix b_r_active = mmse_combiner(eff, b_t_active);
    for (std::size_t i = 0; i < active.size(); ++i)
        out.b_r.row(active[i]) = b_r_active.row(static_cast<Eigen::Index>(i));

    out.rate = achievable_rate(b_r_active, eff, b_t_active, noise_power);
    return out;
}

} // namespace rishbf
