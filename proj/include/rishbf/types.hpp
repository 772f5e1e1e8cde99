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

#ifndef RISHBF_TYPES_HPP
#define RISHBF_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rishbf
{

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// All randomness flows through explicitly passed engines of this type.
using Rng = std::mt19937_64;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm2watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Uniform planar array, nx elements along x and ny along y.
struct UpaSize
{
    int nx = 1;
    int ny = 1;

    int total() const { return nx * ny; }
    void validate() const
    {
        if (nx < 1 || ny < 1)
            throw std::invalid_argument("UPA dimensions must be positive, got " + std::to_string(nx) + "x" +
                                        std::to_string(ny));
    }
    bool operator==(const UpaSize &) const = default;
};

// RIS phase shifts in radians; Theta = diag(exp(j*omega)).
struct PhaseConfig
{
    std::vector<double> omega;

    std::size_t size() const { return omega.size(); }

    // Wraps every entry into [0, 2*pi).
    PhaseConfig canonical() const;
    ComplexVector reflection() const;
};

// Effective channel is numerically rank deficient for the requested number of streams.
class RankDeficientError : public std::runtime_error
{
  public:
    RankDeficientError(const std::string &what, int rank, int required)
        : std::runtime_error(what + " (rank " + std::to_string(rank) + " < " + std::to_string(required) + ")"),
          rank_(rank), required_(required)
    {
    }
    int rank() const { return rank_; }
    int required() const { return required_; }

  private:
    int rank_;
    int required_;
};

// Wraps an angle into [0, 2*pi).
double wrap_phase(double radians);

} // namespace rishbf

#endif
