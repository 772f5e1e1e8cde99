// SPDX-License-Identifier: Apache-2.0

#include "rishbf/harness.hpp"
#include "rishbf/seeding.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rishbf;

namespace
{

ScenarioConfig small_config()
{
    auto cfg = baseline_scenario();
    cfg.ris_array = {4, 4};
    cfg.pso.num_particles = 10;
    cfg.pso.num_iterations = 10;
    cfg.num_trials = 2;
    cfg.geometry.d_tr = 200.0;
    cfg.geometry.d1 = 20.0;
    return cfg;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path tmp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("rishbf_test_" + name);
}

} // namespace

TEST_CASE("seed derivation")
{
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
    const auto a = derive_trial_seeds(1, 0, Method::Pso, 4);
    const auto b = derive_trial_seeds(1, 0, Method::Random, 4);
    const auto c = derive_trial_seeds(1, 2, Method::Pso, 4);
    CHECK(a.channel == b.channel);
    CHECK(a.channel == c.channel);
    CHECK(a.method != b.method);
    CHECK(a.method != c.method);
    CHECK(derive_trial_seeds(1, 0, Method::Pso, 5).channel != a.channel);
}

TEST_CASE("no_ris without a direct path yields zero rate")
{
    auto cfg = small_config();
    cfg.exponent_tr = 400.0; // direct path gain underflows to zero
    const auto seeds = derive_trial_seeds(1, 0, Method::NoRis, 0);
    const auto design = design_trial(cfg, Method::NoRis, seeds);
    CHECK(design.channel.h_tr.norm() == 0.0);
    const auto row = run_trial(cfg, Method::NoRis, seeds);
    CHECK(row.rate == 0.0);
    CHECK(row.flag.find("rank_deficient") != std::string::npos);
}

TEST_CASE("run_trial is deterministic")
{
    const auto cfg = small_config();
    for (auto m : {Method::Pso, Method::Random, Method::Constant, Method::NoRis})
    {
        const auto seeds = derive_trial_seeds(cfg.master_seed, 0, m, 1);
        const auto a = run_trial(cfg, m, seeds);
        const auto b = run_trial(cfg, m, seeds);
        CHECK(a.rate == b.rate);
        CHECK(a.flag == b.flag);
        CHECK(a.trace == b.trace);
        CHECK(a.rate >= 0.0);
    }
}

TEST_CASE("pso is at least as good as constant phases on the same realization")
{
    const auto cfg = small_config();
    for (int t = 0; t < 3; ++t)
    {
        const auto pso = run_trial(cfg, Method::Pso, derive_trial_seeds(cfg.master_seed, 0, Method::Pso, t));
        const auto con =
            run_trial(cfg, Method::Constant, derive_trial_seeds(cfg.master_seed, 0, Method::Constant, t));
        CHECK(pso.rate >= con.rate);
        CHECK(pso.pso_final >= pso.pso_initial);
        CHECK(pso.pso_iterations == 10);
    }
}

TEST_CASE("design_trial structure")
{
    const auto cfg = small_config();
    const auto d = design_trial(cfg, Method::Random, derive_trial_seeds(1, 0, Method::Random, 0));
    CHECK(d.beamformers.f_t.rows() == 64);
    CHECK(d.beamformers.f_t.cols() == 6);
    CHECK(d.beamformers.f_r.rows() == 2);
    CHECK(d.beamformers.f_r.cols() == 16);
    CHECK(d.beamformers.b_t.rows() == 6);
    CHECK(d.beamformers.b_t.cols() == 2);
    CHECK(d.beamformers.b_r.rows() == 2);
    CHECK(d.beamformers.b_r.cols() == 2);
    CHECK(d.phases.size() == 16);
    const double trace = (d.beamformers.b_t.adjoint() * d.beamformers.f_t.adjoint() * d.beamformers.f_t *
                          d.beamformers.b_t)
                             .trace()
                             .real();
    CHECK(trace <= cfg.total_power() * (1.0 + 1e-9));
}

TEST_CASE("run_sweep single cell")
{
    auto cfg = small_config();
    cfg.num_trials = 1;
    cfg.methods = {Method::Random};
    const auto r = run_sweep(cfg, parse_sweep("d1=30"));
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].sweep_var == "d1");
    CHECK(r.rows[0].sweep_value == 30.0);
    REQUIRE(r.aggregates.size() == 1);
    CHECK(r.aggregates[0].trials == 1);
    CHECK(r.aggregates[0].stddev == 0.0);
}

TEST_CASE("run_sweep ordering, worker independence and method isolation")
{
    auto cfg = small_config();
    cfg.num_trials = 3;
    cfg.methods = {Method::Random, Method::Constant, Method::NoRis};
    const auto sweep = parse_sweep("PT=-30,-20");
    const auto serial = run_sweep(cfg, sweep);
    REQUIRE(serial.rows.size() == 18);
    for (std::size_t k = 1; k < serial.rows.size(); ++k)
    {
        const auto &a = serial.rows[k - 1];
        const auto &b = serial.rows[k];
        CHECK(a.sweep_index <= b.sweep_index);
    }
    cfg.workers = 3;
    const auto parallel = run_sweep(cfg, sweep);
    CHECK(format_results(serial.rows) == format_results(parallel.rows));

    auto only = cfg;
    only.methods = {Method::Random};
    const auto isolated = run_sweep(only, sweep);
    std::vector<double> a, b;
    for (const auto &r : serial.rows)
        if (r.method == Method::Random)
            a.push_back(r.rate);
    for (const auto &r : isolated.rows)
        b.push_back(r.rate);
    CHECK(a == b);

    // aggregates do not depend on trial order
    auto reversed = serial.rows;
    std::reverse(reversed.begin(), reversed.end());
    const auto agg = aggregate_rows(reversed);
    for (const auto &x : agg)
    {
        const auto &y = serial.aggregate(x.sweep_value, x.method);
        CHECK(x.mean == doctest::Approx(y.mean).epsilon(1e-12));
        CHECK(x.stddev == doctest::Approx(y.stddev).epsilon(1e-10));
        CHECK(x.trials == y.trials);
    }
    CHECK_THROWS(serial.aggregate(-25.0, Method::Random));
}

TEST_CASE("aggregate statistics")
{
    std::vector<ResultRow> rows(3);
    const double rates[] = {1.0, 2.0, 6.0};
    for (int k = 0; k < 3; ++k)
    {
        rows[static_cast<std::size_t>(k)].rate = rates[k];
        rows[static_cast<std::size_t>(k)].trial = k;
    }
    rows[2].flag = "rank_deficient";
    const auto agg = aggregate_rows(rows);
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].mean == doctest::Approx(3.0));
    CHECK(agg[0].stddev == doctest::Approx(std::sqrt(7.0)));
    CHECK(agg[0].flagged == 1);
}

TEST_CASE("write_results")
{
    const auto empty = tmp_file("empty.csv");
    write_results({}, empty);
    CHECK(slurp(empty) == std::string(kResultsHeader) + "\n");

    std::vector<ResultRow> rows(2);
    rows[0].sweep_var = "d1";
    rows[0].sweep_value = 20;
    rows[0].method = Method::Pso;
    rows[0].trial = 0;
    rows[0].seed = 123;
    rows[0].rate = 1.5;
    rows[1] = rows[0];
    rows[1].trial = 1;
    rows[1].flag = "rf_padded";
    const auto two = tmp_file("two.csv");
    write_results(rows, two);
    const auto text = slurp(two);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("d1,20,pso,0,123,1.5,ok\n") != std::string::npos);
    CHECK(text.find("d1,20,pso,1,123,1.5,rf_padded\n") != std::string::npos);

    CHECK_THROWS_WITH(write_results(rows, "/nonexistent-dir/out.csv"), doctest::Contains("/nonexistent-dir/out.csv"));
    std::filesystem::remove(empty);
    std::filesystem::remove(two);
}

TEST_CASE("identical runs give byte-identical files")
{
    auto cfg = small_config();
    const auto sweep = parse_sweep("d1=20,60");
    const auto a = tmp_file("a.csv"), b = tmp_file("b.csv");
    write_results(run_sweep(cfg, sweep).rows, a);
    write_results(run_sweep(cfg, sweep).rows, b);
    CHECK(slurp(a) == slurp(b));
    cfg.master_seed = 2;
    write_results(run_sweep(cfg, sweep).rows, b);
    CHECK(slurp(a) != slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("write_trace")
{
    const auto p = tmp_file("trace.csv");
    write_trace({1.0, 2.5}, p);
    CHECK(slurp(p) == "iteration,fitness\n1,1\n2,2.5\n");
    std::filesystem::remove(p);
}
