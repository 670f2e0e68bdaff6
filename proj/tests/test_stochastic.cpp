// SPDX-License-Identifier: Apache-2.0
//
// thzchan - indoor channel simulator for the 201-209 GHz band
// Copyright (C) 2026 thzchan contributors
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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "thzchan/analysis.hpp"
#include "thzchan/json_io.hpp"
#include "thzchan/stochastic.hpp"

using namespace thz;

namespace {

// One-sample Kolmogorov-Smirnov statistic against Exponential(mean).
double ks_vs_exponential(std::vector<double> samples, double mean)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        double cdf = 1.0 - std::exp(-samples[i] / mean);
        d = std::max(d, std::abs(cdf - (i + 1) / n));
        d = std::max(d, std::abs(cdf - i / n));
    }
    return d;
}

} // namespace

TEST_CASE("Poisson cluster counts hit the campaign means within 2 percent")
{
    const double lambdas[] = {5.94, 3.79, 2.57, 2.10};
    Rng rng(1001);
    for (double lambda : lambdas)
    {
        double acc = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            acc += sample_num_clusters(lambda, false, rng);
        CHECK(acc / n == doctest::Approx(lambda).epsilon(0.02));
    }
}

TEST_CASE("LoS scenarios see at least one cluster")
{
    Rng rng(7);
    for (int i = 0; i < 20000; ++i)
        CHECK(sample_num_clusters(2.10, true, rng) >= 1);
}

TEST_CASE("Poisson pmf spot check at lambda 2.10")
{
    // P(N=2) = lambda^2 e^-lambda / 2! = 0.270016...
    Rng rng(55);
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (sample_num_clusters(2.10, false, rng) == 2)
            ++hits;
    CHECK(static_cast<double>(hits) / n == doctest::Approx(0.27001642429782513).epsilon(0.02));
}

TEST_CASE("a vanishing rate leaves almost every draw at zero")
{
    Rng rng(3);
    int zeros = 0;
    for (int i = 0; i < 10000; ++i)
        zeros += sample_num_clusters(1e-9, false, rng) == 0 ? 1 : 0;
    CHECK(zeros == 10000);
}

TEST_CASE("exponential gaps")
{
    CHECK(exponential_gap_ns(11.89, 1.0) == 0.0); // ln(1) = 0

    Rng rng(42);
    for (double mean : {11.89, 40.68})
    {
        double acc = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            acc += exponential_gap_ns(mean, rng.uniform());
        CHECK(acc / n == doctest::Approx(mean).epsilon(0.02));
    }
}

TEST_CASE("cluster delays are anchored and strictly increasing")
{
    Rng rng(5);
    auto toa = sample_cluster_delays(50, 2.0, 11.89 / 2.0, 33.4, rng);
    CHECK(toa[0] == doctest::Approx(33.4));
    for (std::size_t i = 1; i < toa.size(); ++i)
        CHECK(toa[i] > toa[i - 1]);
}

TEST_CASE("generated inter-cluster gaps pass a KS test against the exponential fit")
{
    Rng rng(77);
    for (double mean : {11.89, 12.68, 40.68, 18.48})
    {
        std::vector<double> gaps;
        while (gaps.size() < 10000)
        {
            auto toa = sample_cluster_delays(11, 2.0, mean / 2.0, 0.0, rng);
            for (std::size_t i = 1; i < toa.size(); ++i)
                gaps.push_back(toa[i] - toa[i - 1]);
        }
        gaps.resize(10000);
        // 1% asymptotic critical value 1.628 / sqrt(n)
        CHECK(ks_vs_exponential(gaps, mean) < 1.628 / std::sqrt(10000.0));
    }
}

TEST_CASE("cluster power decay law")
{
    // no shadowing: P'(tau) relative to the first cluster is
    // exp(-excess (r_tau - 1)/(r_tau sigma_tau)); with r_tau = 2 and
    // sigma_tau = 11.89 ns an excess of 11.89 ns gives exp(-0.5).
    Rng rng(1);
    std::vector<double> delays{0.0, 11.89};
    auto frac = sample_cluster_powers(delays, 2.0, 11.89, 0.0, 10.0, false, rng);
    CHECK(frac[1] / frac[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(frac[0] + frac[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Ricean split concentrates power in the first cluster as K grows")
{
    Rng rng(2);
    std::vector<double> delays{10.0, 25.0, 37.0, 60.0};
    auto frac = sample_cluster_powers(delays, 2.0, 5.945, 3.0, 60.0, true, rng);
    CHECK(frac[0] > 0.999999);
    double total = 0.0;
    for (double f : frac)
        total += f;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cluster power fractions always sum to one")
{
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial)
    {
        int n = 1 + static_cast<int>(rng.uniform(0.0, 7.0));
        auto delays = sample_cluster_delays(n, 2.0, 6.0, 12.0, rng);
        bool los = (trial % 2) == 0;
        auto frac = sample_cluster_powers(delays, 2.0, 6.0, 3.0, 10.0, los, rng);
        double total = 0.0;
        for (double f : frac)
        {
            CHECK(f >= 0.0);
            total += f;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("angle mapping: the strongest cluster sits at boresight")
{
    Rng rng(4);
    std::vector<double> fracs{0.7, 0.2, 0.1};
    auto aoa = sample_cluster_aoas(fracs, 1.3, 29.0, rng);
    CHECK(aoa[0] == 0.0);

    // P/Pmax = e^-1 with r_phi = 1 and mu_asa = 29 deg puts the cluster
    // 29 degrees off boresight (on either side).
    std::vector<double> two{1.0, std::exp(-1.0)};
    for (int i = 0; i < 50; ++i)
    {
        auto a = sample_cluster_aoas(two, 1.0, 29.0, rng);
        double off = std::min(a[1], 360.0 - a[1]);
        CHECK(off == doctest::Approx(29.0).epsilon(1e-9));
    }
}

TEST_CASE("angle mapping signs are symmetric")
{
    Rng rng(12);
    std::vector<double> two{1.0, 0.4};
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        auto a = sample_cluster_aoas(two, 1.0, 29.0, rng);
        acc += a[1] < 180.0 ? a[1] : a[1] - 360.0; // signed offset
    }
    CHECK(std::abs(acc / n) < 0.5);
}

TEST_CASE("subpath sampling")
{
    Rng rng(8);

    // a single subpath carries the whole cluster
    auto one = sample_subpaths(17.0, 45.0, 1, 0.5, 5.0, rng);
    REQUIRE(one.size() == 1);
    CHECK(one[0].toa_ns == doctest::Approx(17.0));
    CHECK(one[0].aoa_az_deg == doctest::Approx(45.0));
    CHECK(one[0].power_frac_within_cluster == doctest::Approx(1.0));

    // the strongest (first) subpath has no angular offset
    auto subs = sample_subpaths(17.0, 45.0, 20, 0.5, 5.0, rng);
    CHECK(subs[0].aoa_az_deg == doctest::Approx(45.0));
    double total = 0.0;
    for (const auto &s : subs)
    {
        CHECK(s.toa_ns >= 17.0);
        CHECK(s.phase_rad >= 0.0);
        CHECK(s.phase_rad < 2.0 * kPi);
        total += s.power_frac_within_cluster;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // intra-cluster gaps are exponential with mean r_tau_c
    double acc = 0.0;
    int n_gaps = 0;
    Rng rng2(99);
    for (int trial = 0; trial < 8000; ++trial)
    {
        auto sp = sample_subpaths(0.0, 0.0, 20, 0.5, 5.0, rng2);
        for (std::size_t m = 1; m < sp.size(); ++m)
        {
            acc += sp[m].toa_ns - sp[m - 1].toa_ns;
            ++n_gaps;
        }
    }
    CHECK(acc / n_gaps == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("generate anchors the first arrival at the geometric delay")
{
    // corridor stretched to place the Rx exactly 30 m from the Tx
    RoomGeometry g = preset_geometry(ScenarioKind::Hallway);
    g.length_m = 31.0;
    g.rx = {g.tx.x + 30.0, g.tx.y, g.tx.z};

    ChannelRealization real = generate(preset(ScenarioKind::Hallway), g, 321);
    REQUIRE(!real.clusters.empty());
    CHECK(real.distance_m == doctest::Approx(30.0));
    CHECK(real.clusters.front().toa_ns == doctest::Approx(100.0692285594456).epsilon(1e-9));
    CHECK(real.clusters.front().origin == PathOrigin::Los);
}

TEST_CASE("same seed reproduces the realization bit for bit")
{
    RoomGeometry g = preset_geometry(ScenarioKind::MeetingRoom);
    ScenarioParams p = preset(ScenarioKind::MeetingRoom);
    ChannelRealization a = generate(p, g, 5150);
    ChannelRealization b = generate(p, g, 5150);
    CHECK(to_json(a).dump() == to_json(b).dump());

    ChannelRealization c = generate(p, g, 5151);
    CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("meeting room realizations contain traced wall clusters")
{
    RoomGeometry g = preset_geometry(ScenarioKind::MeetingRoom);
    ScenarioParams p = preset(ScenarioKind::MeetingRoom);
    ChannelRealization real = generate(p, g, 42);

    int n_det = 0, n_los = 0;
    for (const Cluster &c : real.clusters)
    {
        if (c.origin == PathOrigin::Deterministic)
        {
            ++n_det;
            CHECK(c.reflection_order >= 1);
            CHECK(c.rl_db > 0.0);
        }
        if (c.origin == PathOrigin::Los)
            ++n_los;
    }
    CHECK(n_det > 0);
    CHECK(n_los == 1);
}

TEST_CASE("cluster power fractions of a realization sum to one")
{
    Rng seed_rng(1);
    for (ScenarioKind kind : all_scenarios())
    {
        ScenarioParams p = preset(kind);
        for (int i = 0; i < 25; ++i)
        {
            Rng geom_rng(Rng::derive(1000 + i, 0));
            RoomGeometry g = sample_drop_geometry(kind, geom_rng);
            ChannelRealization real = generate(p, g, seed_rng.next_u64());
            if (real.clusters.empty())
                continue; // possible without a LoS path
            double total = 0.0;
            for (const Cluster &c : real.clusters)
                total += c.power_frac;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t k = 1; k < real.clusters.size(); ++k)
                CHECK(real.clusters[k].toa_ns > real.clusters[k - 1].toa_ns);
        }
    }
}

TEST_CASE("statistical-only realizations follow the omni CI budget exactly")
{
    ScenarioParams p = preset(ScenarioKind::CubicleArea);
    RoomGeometry g = preset_geometry(ScenarioKind::CubicleArea);
    ChannelRealization real = generate(p, g, 2024);

    CiModel ci{p.ple_omni, 1.0, 0.0, real.f_ref_ghz};
    CHECK(real.pl_omni_db == doctest::Approx(ci_eval_db(ci, real.distance_m)).epsilon(1e-12));
    CHECK(real.total_power_mw() ==
          doctest::Approx(db_to_lin(-real.pl_omni_db)).epsilon(1e-9));

    // subpath amplitude contract: amp^2 * PL_linear = subpath power fraction
    const double pl_lin = db_to_lin(real.pl_omni_db);
    for (const Cluster &c : real.clusters)
    {
        double cluster_frac = 0.0;
        for (const Subpath &s : c.subpaths)
            cluster_frac += s.amplitude * s.amplitude * pl_lin;
        double within = 0.0;
        for (const Subpath &s : c.subpaths)
        {
            CHECK(s.amplitude * s.amplitude * pl_lin ==
                  doctest::Approx(cluster_frac * s.power_frac_within_cluster).epsilon(1e-9));
            within += s.power_frac_within_cluster;
        }
        CHECK(within == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("NLoS first arrival is pushed beyond the geometric delay")
{
    ScenarioParams p = preset(ScenarioKind::NLoS);
    Rng seed_rng(17);
    int with_clusters = 0;
    for (int i = 0; i < 60; ++i)
    {
        Rng geom_rng(Rng::derive(55, i));
        RoomGeometry g = sample_drop_geometry(ScenarioKind::NLoS, geom_rng);
        ChannelRealization real = generate(p, g, seed_rng.next_u64());
        if (real.clusters.empty())
            continue;
        ++with_clusters;
        CHECK(real.clusters.front().toa_ns > distance_to_delay_ns(real.distance_m));
        for (const Cluster &c : real.clusters)
            CHECK(c.origin == PathOrigin::Statistical);
    }
    CHECK(with_clusters > 30); // lambda 2.10 leaves ~12% of drops empty
}

TEST_CASE("with shadowing off the cluster powers lie exactly on the decay line")
{
    ScenarioParams p = preset(ScenarioKind::CubicleArea);
    p.xi_db = 0.0;
    p.lambda_n = 25.0; // many clusters for a well-conditioned regression
    RoomGeometry g = preset_geometry(ScenarioKind::CubicleArea);
    ChannelRealization real = generate(p, g, 31337);
    REQUIRE(real.clusters.size() >= 10);

    DropStats stats = analyze_realization(real);
    REQUIRE(stats.cnl.points.size() >= 8);
    const double analytic = 10.0 * (p.r_tau - 1.0) / (p.r_tau * p.sigma_tau_ns() * std::log(10.0));
    CHECK(stats.cnl.slope_db_per_ns == doctest::Approx(analytic).epsilon(1e-9));
    CHECK(stats.cnl.corr == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("calibration input validation")
{
    ScenarioParams p = preset(ScenarioKind::CubicleArea);
    CHECK_THROWS_AS(calibrate(p, 1.9, 3.5, 100), std::invalid_argument);   // n_mc too small
    CHECK_THROWS_AS(calibrate(p, -50.0, 3.5, 500), std::invalid_argument); // ln(DS) = -50
    double nan = std::nan("");
    CHECK_THROWS_AS(calibrate(p, nan, 3.5, 500), std::invalid_argument);
}

TEST_CASE("calibration moves the ensemble toward the targets")
{
    ScenarioParams p = preset(ScenarioKind::CubicleArea);
    auto [t_ds, t_asa] = validation_targets(ScenarioKind::CubicleArea);

    auto [ds0, asa0] = ensemble_mean_log_spreads(p, 500, 999);
    double err0 = std::hypot(ds0 - t_ds, asa0 - t_asa);

    CalibrateOptions opts;
    opts.max_sweeps = 2;
    CalibrationResult res = calibrate(p, t_ds, t_asa, 500, opts);
    double err1 = std::hypot(res.achieved_mu_log_ds - t_ds, res.achieved_mu_log_asa - t_asa);
    CHECK(err1 < err0);
    CHECK(err1 < 0.10);
}
