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

#include <cmath>

#include "thzchan/dft.hpp"
#include "thzchan/pathloss.hpp"
#include "thzchan/rng.hpp"

using namespace thz;

namespace {

// Single-direction sweep with unit antennas; taps are placed directly in
// the delay domain and transformed to the CTF.
SoundingSweep sweep_from_taps(const std::vector<std::pair<int, double>> &taps_bin_amp,
                              double noise_floor_dbm = -300.0, std::uint64_t noise_seed = 0)
{
    SoundingSweep sweep;
    sweep.system = preset_system(ScenarioKind::CubicleArea);
    sweep.system.az_grid_deg = {0.0};
    sweep.system.el_grid_deg = {0.0};
    sweep.system.rx_gain_dbi = 0.0;
    sweep.system.tx_gain_dbi = 0.0;
    sweep.system.noise_floor_dbm = noise_floor_dbm;

    std::vector<std::complex<double>> cir(sweep.system.n_sweep, {0.0, 0.0});
    for (auto [bin, amp] : taps_bin_amp)
        cir[bin] += amp;
    auto ctf = cir_to_ctf(cir);

    if (noise_floor_dbm > -250.0)
    {
        Rng rng(noise_seed);
        double sigma = std::sqrt(sweep.system.n_sweep * db_to_lin(noise_floor_dbm) / 2.0);
        for (auto &v : ctf)
            v += std::complex<double>(sigma * rng.normal(), sigma * rng.normal());
    }
    sweep.ctf.push_back(std::move(ctf));
    return sweep;
}

} // namespace

TEST_CASE("free-space path loss at the reference distance")
{
    CHECK(fspl_db(1.0, 205.0) == doctest::Approx(78.68286044299846).epsilon(1e-12));
    CHECK(fspl_db(1.0, 140.0) == doctest::Approx(75.37034393544813).epsilon(1e-12));
    CHECK(fspl_db(2.0, 205.0) - fspl_db(1.0, 205.0) ==
          doctest::Approx(6.020599913279624).epsilon(1e-12));

    // strictly increasing in both arguments
    CHECK(fspl_db(1.0, 209.0) > fspl_db(1.0, 201.0));
    CHECK(fspl_db(3.0, 205.0) > fspl_db(2.0, 205.0));

    CHECK_THROWS_AS(fspl_db(0.0, 205.0), std::invalid_argument);
}

TEST_CASE("close-in model evaluation")
{
    CiModel meeting{2.13, 1.0, 0.0, 205.0};
    CHECK(ci_eval_db(meeting, 10.0) == doctest::Approx(99.98286044299846).epsilon(1e-12));
    CHECK(ci_eval_db(meeting, 1.0) == doctest::Approx(fspl_db(1.0, 205.0)));

    CiModel hallway{1.50, 1.0, 0.0, 205.0};
    CHECK(ci_eval_db(hallway, 30.0) == doctest::Approx(100.8396792637934).epsilon(1e-12));

    CHECK(ci_eval_db(meeting, 10.0, 3.5) == doctest::Approx(99.98286044299846 + 3.5));
    CHECK_THROWS_AS(ci_eval_db(meeting, 0.5), std::invalid_argument);
}

TEST_CASE("fit recovers the exponent exactly on noiseless data")
{
    CiModel truth{2.13, 1.0, 0.0, 205.0};
    std::vector<std::pair<double, double>> samples;
    for (double d = 1.5; d < 30.0; d += 0.7)
        samples.emplace_back(d, ci_eval_db(truth, d));
    CiModel fit = ci_fit(samples, 205.0);
    CHECK(std::abs(fit.ple - 2.13) < 1e-9);
    CHECK(fit.sigma_sf_db < 1e-9);
}

TEST_CASE("fit stays within 0.05 of the exponent under 4 dB shadowing")
{
    CiModel truth{2.5, 1.0, 0.0, 205.0};
    Rng rng(99);
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < 1000; ++i)
    {
        double d = rng.uniform(2.0, 30.0);
        samples.emplace_back(d, ci_eval_db(truth, d, 4.0 * rng.normal()));
    }
    CiModel fit = ci_fit(samples, 205.0);
    CHECK(std::abs(fit.ple - 2.5) < 0.05);
    CHECK(fit.sigma_sf_db == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("fit rejects unidentifiable sample sets")
{
    std::vector<std::pair<double, double>> one{{5.0, 100.0}};
    CHECK_THROWS_AS(ci_fit(one, 205.0), std::invalid_argument);

    std::vector<std::pair<double, double>> equal{{5.0, 100.0}, {5.0, 101.0}, {5.0, 99.0}};
    CHECK_THROWS_AS(ci_fit(equal, 205.0), std::invalid_argument);

    std::vector<std::pair<double, double>> below{{0.5, 90.0}, {5.0, 100.0}};
    CHECK_THROWS_AS(ci_fit(below, 205.0), std::invalid_argument);
}

TEST_CASE("best-direction loss of a constant CTF")
{
    // |H| = 1e-5 at every sweep point -> 100 dB
    SoundingSweep sweep = sweep_from_taps({{0, 1e-5}});
    CHECK(pl_best_los_db(sweep) == doctest::Approx(100.0).epsilon(1e-9));

    // a weaker extra direction never changes the best-direction estimate
    sweep.system.az_grid_deg = {0.0, 10.0};
    sweep.ctf.push_back(std::vector<std::complex<double>>(sweep.system.n_sweep, {1e-7, 0.0}));
    CHECK(pl_best_los_db(sweep) == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("windowed estimator equals the CTF average for a single clean tap")
{
    SoundingSweep sweep = sweep_from_taps({{40, 3e-6}});
    double a = pl_best_los_db(sweep);
    double b = pl_best_nlos_db(sweep, 50);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("full window equals total direction energy")
{
    SoundingSweep sweep = sweep_from_taps({{10, 2e-6}, {300, 1e-6}, {700, 5e-7}});
    double total = 0.0;
    for (const auto &v : sweep.ctf[0])
        total += std::norm(v);
    total /= sweep.system.n_sweep; // Parseval with the 1/N inverse transform
    CHECK(pl_best_nlos_db(sweep, sweep.system.n_sweep) ==
          doctest::Approx(-lin_to_db(total)).epsilon(1e-9));
}

TEST_CASE("windowed estimator is monotone in the window size")
{
    SoundingSweep sweep = sweep_from_taps({{10, 2e-6}, {300, 1e-6}}, -140.0, 5);
    double prev = 1e300;
    for (int w : {1, 2, 5, 20, 50, 200, 801})
    {
        double pl = pl_best_nlos_db(sweep, w);
        CHECK(pl <= prev + 1e-12);
        prev = pl;
    }
}

TEST_CASE("windowing removes the noise-floor bias of the naive estimator")
{
    // Two taps about 25 dB above a -140 dBm/tap floor, so the total path
    // power is comparable to the 801 taps of integrated noise. The naive
    // band-average absorbs all of that noise; a 20-tap window keeps the
    // signal plus a small top-of-noise residue.
    const double tap_amp = std::sqrt(db_to_lin(-115.4));
    const double truth_db = -lin_to_db(2.0 * tap_amp * tap_amp);
    SoundingSweep sweep = sweep_from_taps({{100, tap_amp}, {140, tap_amp}}, -140.0, 11);

    double windowed = pl_best_nlos_db(sweep, 20);
    double naive = pl_best_los_db(sweep);
    CHECK(std::abs(windowed - truth_db) < 1.0);
    CHECK(truth_db - naive >= 3.0); // biased low by at least 3 dB
}

TEST_CASE("omni loss equals best-direction loss for a single direction")
{
    SoundingSweep sweep = sweep_from_taps({{10, 2e-6}});
    CHECK(pl_omni_db(sweep, 50) == doctest::Approx(pl_best_nlos_db(sweep, 50)).epsilon(1e-12));
}

TEST_CASE("omni loss never exceeds the best-direction loss")
{
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial)
    {
        SoundingSweep sweep = sweep_from_taps({{5 + trial, 1e-6}}, -140.0, trial);
        sweep.system.az_grid_deg = {0.0, 10.0, 20.0};
        for (int extra = 0; extra < 2; ++extra)
        {
            std::vector<std::complex<double>> cir(sweep.system.n_sweep, {0.0, 0.0});
            cir[static_cast<int>(rng.uniform(0.0, 800.0))] = rng.uniform(1e-7, 2e-6);
            sweep.ctf.push_back(cir_to_ctf(cir));
        }
        CHECK(pl_omni_db(sweep, 50) <= pl_best_nlos_db(sweep, 50) + 1e-12);
    }
}

TEST_CASE("reflection loss definition")
{
    // a pure Friis path has zero reflection loss
    double f = 205.0, toa = 20.0;
    double friis_amp = 1.0 / (4.0 * kPi * f * toa);
    double p_db = lin_to_db(friis_amp * friis_amp);
    CHECK(reflection_loss_db(1.0, p_db, f, toa) == doctest::Approx(0.0).epsilon(1e-9));

    // a cluster 15 dB below the Friis level reports 15 dB of loss
    CHECK(reflection_loss_db(1.0, p_db - 15.0, f, toa) == doctest::Approx(15.0).epsilon(1e-9));

    CHECK_THROWS_AS(reflection_loss_db(1.0, -100.0, f, 0.0), std::invalid_argument);
}
