// SPDX-License-Identifier: Apache-2.0

#include "rishbf/rf_beamformer.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace rishbf;
using rishbf::test::max_abs;

namespace
{

AngularCluster cluster(double elev, double azim, double spread, int paths = 5)
{
    return {elev, spread, azim, spread, elev, spread, azim, spread, paths};
}

SubchannelSpec link_spec(Link label, UpaSize tx, UpaSize rx, AngularCluster c)
{
    SubchannelSpec s;
    s.label = label;
    s.clusters = {c};
    s.tx_array = tx;
    s.rx_array = rx;
    return s;
}

// Dense independent check: does the cell around (kx, ky) contain any direction of
// the support sampled at `step` degrees?
bool cell_hits_support(const AngleSupport &support, double kx, double ky, double hx, double hy, double step)
{
    for (const auto &e : support.elevation)
        for (const auto &a : support.azimuth)
            for (double th = e.lo; th <= e.hi + 1e-9; th += step)
                for (double ps = a.lo; ps <= a.hi + 1e-9; ps += step)
                {
                    const double gx = std::sin(th * kPi / 180.0) * std::cos(ps * kPi / 180.0);
                    const double gy = std::sin(th * kPi / 180.0) * std::sin(ps * kPi / 180.0);
                    if (std::abs(gx - kx) <= hx + 1e-12 && std::abs(gy - ky) <= hy + 1e-12)
                        return true;
                }
    return false;
}

} // namespace

TEST_CASE("merge_intervals")
{
    CHECK(merge_intervals({{25, 45}, {40, 60}}) == std::vector<Interval>{{25, 60}});
    CHECK(merge_intervals({{50, 70}, {25, 45}}) == std::vector<Interval>{{25, 45}, {50, 70}});
    CHECK(merge_intervals({{1, 2}, {2, 3}}) == std::vector<Interval>{{1, 3}});
    CHECK(merge_intervals({{5, 5}}) == std::vector<Interval>{{5, 5}});
    CHECK(merge_intervals({}).empty());
}

TEST_CASE("angle supports from zero-spread cluster are points")
{
    const auto s = link_spec(Link::TI, {2, 2}, {2, 2}, cluster(60.0, 90.0, 0.0));
    const auto rx = receive_support(s);
    CHECK(rx.elevation == std::vector<Interval>{{60, 60}});
    CHECK(rx.azimuth == std::vector<Interval>{{90, 90}});
}

TEST_CASE("angle supports union TR and TI departures, IR and TR arrivals")
{
    const auto tr = link_spec(Link::TR, {8, 8}, {4, 4}, cluster(35.0, 25.0, 10.0));
    const auto ti = link_spec(Link::TI, {8, 8}, {16, 16}, cluster(60.0, 90.0, 10.0));
    const auto ir = link_spec(Link::IR, {16, 16}, {4, 4}, cluster(50.0, 225.0, 10.0));
    const auto sup = build_angle_supports(tr, ti, ir);
    CHECK(sup.aod.elevation == std::vector<Interval>{{25, 45}, {50, 70}});
    CHECK(sup.aod.azimuth == std::vector<Interval>{{15, 35}, {80, 100}});
    CHECK(sup.aoa.elevation == std::vector<Interval>{{25, 60}});
    CHECK(sup.aoa.azimuth == std::vector<Interval>{{15, 35}, {215, 235}});
    CHECK(sup.aod.mean_directions.size() == 2);
    CHECK(sup.aoa.mean_directions.size() == 2);
}

TEST_CASE("sample_support_image includes end points")
{
    AngleSupport s;
    s.elevation = {{30, 32}};
    s.azimuth = {{10, 10}};
    const auto img = sample_support_image(s, 1.0);
    CHECK(img.size() == 3);
    const auto last = direction_coeffs(32.0, 10.0);
    bool found = false;
    for (const auto &g : img)
        found = found || (std::abs(g.x - last.x) < 1e-15 && std::abs(g.y - last.y) < 1e-15);
    CHECK(found);
}

TEST_CASE("quantized_grid values")
{
    auto g = quantized_grid({2, 1});
    REQUIRE(g.pairs.size() == 2);
    CHECK(g.pairs[0].kappa_x == doctest::Approx(-0.5));
    CHECK(g.pairs[1].kappa_x == doctest::Approx(0.5));
    CHECK(g.pairs[0].kappa_y == doctest::Approx(0.0));

    g = quantized_grid({8, 8});
    REQUIRE(g.pairs.size() == 64);
    CHECK(g.pairs[0].m == 1);
    CHECK(g.pairs[0].n == 1);
    CHECK(g.pairs[0].kappa_x == doctest::Approx(-0.875));
    CHECK(g.pairs[1].n == 2); // m-major

    g = quantized_grid({1, 3});
    for (const auto &p : g.pairs)
        CHECK(p.kappa_x == 0.0);

    for (const auto &p : quantized_grid({4, 8}).pairs)
    {
        CHECK(p.kappa_x == doctest::Approx((2.0 * p.m - 1.0) / 4.0 - 1.0));
        CHECK(p.kappa_y == doctest::Approx((2.0 * p.n - 1.0) / 8.0 - 1.0));
        CHECK(p.kappa_x >= -1.0);
        CHECK(p.kappa_x < 1.0);
    }
}

TEST_CASE("full grid steering vectors are mutually orthogonal")
{
    for (UpaSize s : {UpaSize{1, 1}, UpaSize{2, 1}, UpaSize{4, 4}, UpaSize{8, 8}, UpaSize{3, 5}})
    {
        const auto g = quantized_grid(s);
        const auto rf = build_rf_beamformer(s, g.pairs, 0.5);
        const ComplexMatrix gram = rf.matrix.adjoint() * rf.matrix;
        CHECK(max_abs(gram - ComplexMatrix::Identity(s.total(), s.total())) <= 1e-10);
    }
}

TEST_CASE("build_rf_beamformer examples")
{
    auto g = quantized_grid({1, 1});
    auto rf = build_rf_beamformer({1, 1}, g.pairs, 0.5);
    CHECK(std::abs(rf.matrix(0, 0) - Complex(1.0, 0.0)) < 1e-15);

    g = quantized_grid({2, 1});
    rf = build_rf_beamformer({2, 1}, g.pairs, 0.5);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(rf.matrix(0, 0) - Complex(r, 0.0)) < 1e-15);
    CHECK(std::abs(rf.matrix(1, 0) - Complex(0.0, -r)) < 1e-15);
    CHECK(std::abs(rf.matrix(0, 1) - Complex(r, 0.0)) < 1e-15);
    CHECK(std::abs(rf.matrix(1, 1) - Complex(0.0, r)) < 1e-15);
    CHECK(std::abs(rf.matrix.col(0).dot(rf.matrix.col(1))) < 1e-15);

    std::vector<QuantizedPair> dup{g.pairs[0], g.pairs[0]};
    CHECK_THROWS(build_rf_beamformer({2, 1}, dup, 0.5));
}

TEST_CASE("select_pairs with unrestricted support returns the whole grid")
{
    AngleSupport all;
    all.elevation = {{0, 90}};
    all.azimuth = {{0, 360}};
    all.mean_directions = {{0.0, 0.0}};
    const auto grid = quantized_grid({4, 4});
    const auto sel = select_pairs(grid, all, {}, 16);
    CHECK_FALSE(sel.padded);
    std::set<std::pair<int, int>> seen;
    for (const auto &p : sel.pairs)
        seen.insert({p.m, p.n});
    CHECK(seen.size() == 16);
}

TEST_CASE("select_pairs picks the cell of a single on-grid path")
{
    // (0.25, 0.25) is the centre of cell (3, 3) on a 4x4 grid
    const double th = std::asin(0.25 * std::sqrt(2.0)) * 180.0 / kPi;
    AngleSupport point;
    point.elevation = {{th, th}};
    point.azimuth = {{45, 45}};
    const auto dir = direction_coeffs(th, 45.0);
    point.mean_directions = {dir};
    const std::vector<DirectionCoeffs> paths{dir};
    const auto sel = select_pairs(quantized_grid({4, 4}), point, paths, 1);
    REQUIRE(sel.pairs.size() == 1);
    CHECK(sel.pairs[0].m == 3);
    CHECK(sel.pairs[0].n == 3);
    CHECK_FALSE(sel.padded);

    // coherent combining gain on the selected beam
    const auto rf = build_rf_beamformer({4, 4}, sel.pairs, 0.5);
    const auto phi = phase_response_vector({4, 4}, {sel.pairs[0].kappa_x, sel.pairs[0].kappa_y}, 0.5);
    CHECK((rf.matrix.adjoint() * phi).norm() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("select_pairs pads when too few cells intersect")
{
    const double th = std::asin(0.25 * std::sqrt(2.0)) * 180.0 / kPi;
    AngleSupport point;
    point.elevation = {{th, th}};
    point.azimuth = {{45, 45}};
    point.mean_directions = {direction_coeffs(th, 45.0)};
    const auto sel = select_pairs(quantized_grid({4, 4}), point, {}, 3);
    CHECK(sel.pairs.size() == 3);
    CHECK(sel.padded);
    CHECK(sel.pairs[0].m == 3);
    CHECK(sel.pairs[0].n == 3);
    std::set<std::pair<int, int>> seen;
    for (const auto &p : sel.pairs)
        seen.insert({p.m, p.n});
    CHECK(seen.size() == 3);
}

TEST_CASE("select_pairs budget errors")
{
    AngleSupport s;
    s.elevation = {{30, 40}};
    s.azimuth = {{10, 20}};
    s.mean_directions = {direction_coeffs(35, 15)};
    const auto grid = quantized_grid({2, 2});
    CHECK_THROWS(select_pairs(grid, s, {}, 0));
    CHECK_THROWS(select_pairs(grid, s, {}, 5));
}

TEST_CASE("select_pairs on the baseline transmit side")
{
    const auto tr = link_spec(Link::TR, {8, 8}, {4, 4}, cluster(35.0, 25.0, 10.0));
    const auto ti = link_spec(Link::TI, {8, 8}, {16, 16}, cluster(60.0, 90.0, 10.0));
    const auto ir = link_spec(Link::IR, {16, 16}, {4, 4}, cluster(50.0, 225.0, 10.0));
    const auto sup = build_angle_supports(tr, ti, ir);
    const auto grid = quantized_grid({8, 8});

    Rng rng(5);
    std::vector<DirectionCoeffs> paths;
    for (const auto *s : {&ti, &tr})
        for (const auto &a : sample_path_angles(s->clusters[0], rng))
            paths.push_back(direction_coeffs(a.elev_aod, a.azim_aod));

    const auto sel = select_pairs(grid, sup.aod, paths, 6);
    REQUIRE(sel.pairs.size() == 6);
    CHECK_FALSE(sel.padded);
    std::set<std::pair<int, int>> seen;
    for (const auto &p : sel.pairs)
    {
        seen.insert({p.m, p.n});
        CHECK(cell_hits_support(sup.aod, p.kappa_x, p.kappa_y, 1.0 / 8.0, 1.0 / 8.0, 0.25));
    }
    CHECK(seen.size() == 6);

    // scores are path counts and come out non-increasing
    for (std::size_t k = 1; k < sel.pairs.size(); ++k)
        CHECK(sel.pairs[k - 1].score >= sel.pairs[k].score);
    double total = 0.0;
    for (const auto &p : sel.pairs)
        total += p.score;
    CHECK(total <= static_cast<double>(paths.size()));

    // deterministic
    const auto again = select_pairs(grid, sup.aod, paths, 6);
    for (std::size_t k = 0; k < 6; ++k)
    {
        CHECK(again.pairs[k].m == sel.pairs[k].m);
        CHECK(again.pairs[k].n == sel.pairs[k].n);
    }

    const auto rf = build_rf_beamformer({8, 8}, sel.pairs, 0.5);
    CHECK(max_abs(rf.matrix.adjoint() * rf.matrix - ComplexMatrix::Identity(6, 6)) <= 1e-10);
    for (Eigen::Index i = 0; i < rf.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < rf.matrix.cols(); ++j)
            CHECK(std::abs(std::abs(rf.matrix(i, j)) - 1.0 / 8.0) <= 1e-12);
}
