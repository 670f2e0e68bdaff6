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

#ifndef THZCHAN_SPREAD_HPP
#define THZCHAN_SPREAD_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "thzchan/common.hpp"

namespace thz {

// Power-weighted RMS deviation about the power-weighted mean.
inline double rms_spread(std::span<const double> values, std::span<const double> powers)
{
    if (values.empty() || values.size() != powers.size())
        throw std::invalid_argument("rms_spread: bad input sizes");
    double psum = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (powers[i] < 0.0)
            throw std::invalid_argument("rms_spread: negative power");
        psum += powers[i];
        mean += powers[i] * values[i];
    }
    if (psum <= 0.0)
        throw std::invalid_argument("rms_spread: total power must be positive");
    mean /= psum;
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        acc += powers[i] * (values[i] - mean) * (values[i] - mean);
    return std::sqrt(acc / psum);
}

// RMS azimuth spread minimized over reference-direction offsets: for each
// offset j*step the angles are rotated via MOD(phi + j*step, 360) and the
// power-weighted RMS about the rotated mean is taken; the minimum over j
// removes the arbitrary 0/360 cut.
inline double rms_azimuth_spread_deg(std::span<const double> az_deg, std::span<const double> powers,
                                     double offset_step_deg = 1.0)
{
    if (az_deg.empty() || az_deg.size() != powers.size())
        throw std::invalid_argument("rms_azimuth_spread_deg: bad input sizes");
    if (offset_step_deg <= 0.0 || offset_step_deg > 360.0)
        throw std::invalid_argument("rms_azimuth_spread_deg: bad offset step");

    double psum = 0.0;
    for (double p : powers)
        psum += p;
    if (psum <= 0.0)
        throw std::invalid_argument("rms_azimuth_spread_deg: total power must be positive");

    const int n_offsets = static_cast<int>(std::ceil(360.0 / offset_step_deg));
    double best = 0.0;
    bool first = true;
    std::vector<double> rotated(az_deg.size());
    for (int j = 0; j < n_offsets; ++j)
    {
        double off = j * offset_step_deg;
        double mean = 0.0;
        for (std::size_t i = 0; i < az_deg.size(); ++i)
        {
            rotated[i] = wrap_deg(az_deg[i] + off);
            mean += powers[i] * rotated[i];
        }
        mean /= psum;
        double acc = 0.0;
        for (std::size_t i = 0; i < az_deg.size(); ++i)
            acc += powers[i] * (rotated[i] - mean) * (rotated[i] - mean);
        double spread = std::sqrt(acc / psum);
        if (first || spread < best)
        {
            best = spread;
            first = false;
        }
    }
    return best;
}

} // namespace thz

#endif
