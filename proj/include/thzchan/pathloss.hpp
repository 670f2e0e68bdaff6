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

#ifndef THZCHAN_PATHLOSS_HPP
#define THZCHAN_PATHLOSS_HPP

#include <span>
#include <utility>
#include <vector>

#include "thzchan/common.hpp"
#include "thzchan/sweep.hpp"

namespace thz {

// Close-in free-space reference path loss model, anchored at FSPL(d0).
struct CiModel
{
    double ple = 2.0;
    double d0_m = 1.0;
    double sigma_sf_db = 0.0;
    double f_ref_ghz = kDefaultRefFreqGhz;
};

// Friis free-space loss at the reference distance: -20 log10(c / (4 pi f d0)).
double fspl_db(double d0_m, double f_ghz);

// 10 PLE log10(d/d0) + FSPL(d0) + shadowing.
double ci_eval_db(const CiModel &model, double d_m, double shadowing_db = 0.0);

// Closed-form least-squares PLE anchored at FSPL(d0); sigma_sf is the RMS
// residual. Rejects sample sets without distinct distances.
CiModel ci_fit(std::span<const std::pair<double, double>> samples_d_pl, double f_ghz,
               double d0_m = 1.0);

// Path loss from the strongest scanned direction using the band-averaged
// CTF power. Suited to LoS links; a noise-dominated sweep biases it low.
double pl_best_los_db(const SoundingSweep &sweep);

// Noise-robust variant: per direction, transform to the CIR, keep the
// window_w strongest taps, take the best direction.
double pl_best_nlos_db(const SoundingSweep &sweep, int window_w);

// Sum of the windowed tap power over every scanned direction.
double pl_omni_db(const SoundingSweep &sweep, int window_w);

// Cluster power deficit relative to free-space spreading at the cluster
// delay: RL = -10 log10(P_c / P_t) - 20 log10(4 pi f tau). P_t = 0 dBm.
double reflection_loss_db(double cluster_power_frac, double total_rx_power_db, double f_ghz,
                          double toa_ns);

// Antenna gain baked into every synthesized CTF sample; the estimators
// above add it back onto the loss to de-embed the antennas.
double sweep_gain_offset_db(const SystemParams &system);

} // namespace thz

#endif
