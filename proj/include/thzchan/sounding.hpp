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

#ifndef THZCHAN_SOUNDING_HPP
#define THZCHAN_SOUNDING_HPP

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "thzchan/stochastic.hpp"
#include "thzchan/sweep.hpp"

namespace thz {

// Gaussian main lobe with a flat side-lobe floor: the linear power gain is
//   G(psi) = G_max * max(exp(-4 ln2 (psi/HPBW)^2), floor)
// and the amplitude gain is its square root.
double pattern_gain_amp(double off_boresight_deg, double hpbw_deg, double gain_dbi,
                        double sidelobe_floor_db);

// CTF seen by an Rx beam pointed at (rx_az, rx_el), boresight-relative
// frame. Complex circular Gaussian noise is added per frequency sample when
// noise_rng is non-null, scaled so the delay-domain floor matches the
// configured noise floor.
std::vector<std::complex<double>> synthesize_ctf(const ChannelRealization &real,
                                                 const SystemParams &system, double rx_az_deg,
                                                 double rx_el_deg, Rng *noise_rng);

// Full rotation scan over the system's (azimuth x elevation) grid. Noise is
// drawn from a per-direction substream of `seed`, so sweeps are reproducible
// regardless of scan order.
SoundingSweep full_scan(const ChannelRealization &real, const SystemParams &system,
                        std::uint64_t seed);

// De-embed the measurement system from a raw S21 sweep:
//   H_channel = S_measured * H_attenuator / S_calibration.
std::vector<std::complex<double>> calibrate_ctf(std::span<const std::complex<double>> s_measured,
                                                std::span<const std::complex<double>> s_calibration,
                                                std::span<const std::complex<double>> h_attenuator);

// Average factor by which the overlapping scan beams over-count the power
// of an in-plane (elevation 0) path; used to correct cluster power sums.
double beam_overlap_factor(const SystemParams &system);

// Versioned CSV with a key-value header followed by one row per
// (direction, sweep point); identical seeds give identical bytes.
void write_sweep_csv(std::ostream &os, const SoundingSweep &sweep);
SoundingSweep read_sweep_csv(std::istream &is);

} // namespace thz

#endif
