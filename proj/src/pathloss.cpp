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

#include "thzchan/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thzchan/dft.hpp"

namespace thz {

double fspl_db(double d0_m, double f_ghz)
{
    if (d0_m <= 0.0 || f_ghz <= 0.0)
        throw std::invalid_argument("fspl_db: distance and frequency must be positive");
    return -20.0 * std::log10(kSpeedOfLight / (4.0 * kPi * f_ghz * 1e9 * d0_m));
}

double ci_eval_db(const CiModel &model, double d_m, double shadowing_db)
{
    if (d_m < model.d0_m)
        throw std::invalid_argument("ci_eval_db: d must be >= d0");
    return 10.0 * model.ple * std::log10(d_m / model.d0_m) + fspl_db(model.d0_m, model.f_ref_ghz) +
           shadowing_db;
}

CiModel ci_fit(std::span<const std::pair<double, double>> samples, double f_ghz, double d0_m)
{
    if (samples.size() < 2)
        throw std::invalid_argument("ci_fit: need at least 2 samples");

    double d_min = samples[0].first, d_max = samples[0].first;
    for (const auto &[d, pl] : samples)
    {
        if (d < d0_m)
            throw std::invalid_argument("ci_fit: all distances must be >= d0");
        d_min = std::min(d_min, d);
        d_max = std::max(d_max, d);
    }
    if (d_max - d_min < 1e-12 * std::max(1.0, d_max))
        throw std::invalid_argument("ci_fit: PLE is unidentifiable from a single distance");

    // MMSE fit of PL - FSPL(d0) = PLE * 10 log10(d/d0), no intercept.
    const double anchor = fspl_db(d0_m, f_ghz);
    double sww = 0.0, swy = 0.0;
    for (const auto &[d, pl] : samples)
    {
        double w = 10.0 * std::log10(d / d0_m);
        double y = pl - anchor;
        sww += w * w;
        swy += w * y;
    }

    CiModel m;
    m.ple = swy / sww;
    m.d0_m = d0_m;
    m.f_ref_ghz = f_ghz;

    double ss = 0.0;
    for (const auto &[d, pl] : samples)
    {
        double r = (pl - anchor) - m.ple * 10.0 * std::log10(d / d0_m);
        ss += r * r;
    }
    m.sigma_sf_db = std::sqrt(ss / static_cast<double>(samples.size()));
    return m;
}

double sweep_gain_offset_db(const SystemParams &system)
{
    return system.rx_gain_dbi + (system.apply_tx_pattern ? system.tx_gain_dbi : 0.0);
}

double pl_best_los_db(const SoundingSweep &sweep)
{
    sweep.validate();
    double best = 0.0;
    for (const auto &h : sweep.ctf)
    {
        double acc = 0.0;
        for (const auto &v : h)
            acc += std::norm(v);
        best = std::max(best, acc / static_cast<double>(h.size()));
    }
    if (best <= 0.0)
        throw std::invalid_argument("pl_best_los_db: sweep carries no power");
    return -lin_to_db(best) + sweep_gain_offset_db(sweep.system);
}

namespace {

// Power of the window_w strongest CIR taps for one direction.
double windowed_tap_power(const std::vector<std::complex<double>> &ctf, int window_w)
{
    auto cir = ctf_to_cir(ctf);
    std::vector<double> p(cir.size());
    for (std::size_t k = 0; k < cir.size(); ++k)
        p[k] = std::norm(cir[k]);
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window_w), p.size());
    std::partial_sort(p.begin(), p.begin() + w, p.end(), std::greater<double>());
    double acc = 0.0;
    for (std::size_t k = 0; k < w; ++k)
        acc += p[k];
    return acc;
}

} // namespace

double pl_best_nlos_db(const SoundingSweep &sweep, int window_w)
{
    sweep.validate();
    if (window_w < 1)
        throw std::invalid_argument("pl_best_nlos_db: window_w must be >= 1");
    double best = 0.0;
    for (const auto &h : sweep.ctf)
        best = std::max(best, windowed_tap_power(h, window_w));
    if (best <= 0.0)
        throw std::invalid_argument("pl_best_nlos_db: sweep carries no power");
    return -lin_to_db(best) + sweep_gain_offset_db(sweep.system);
}

double pl_omni_db(const SoundingSweep &sweep, int window_w)
{
    sweep.validate();
    if (window_w < 1)
        throw std::invalid_argument("pl_omni_db: window_w must be >= 1");
    double total = 0.0;
    for (const auto &h : sweep.ctf)
        total += windowed_tap_power(h, window_w);
    if (total <= 0.0)
        throw std::invalid_argument("pl_omni_db: sweep carries no power");
    return -lin_to_db(total) + sweep_gain_offset_db(sweep.system);
}

double reflection_loss_db(double cluster_power_frac, double total_rx_power_db, double f_ghz,
                          double toa_ns)
{
    if (toa_ns <= 0.0)
        throw std::invalid_argument("reflection_loss_db: delay must be positive");
    if (cluster_power_frac <= 0.0)
        throw std::invalid_argument("reflection_loss_db: cluster power must be positive");
    double p_cluster_db = lin_to_db(cluster_power_frac) + total_rx_power_db;
    return -p_cluster_db - 20.0 * std::log10(4.0 * kPi * f_ghz * toa_ns);
}

} // namespace thz
