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

#ifndef THZCHAN_SWEEP_HPP
#define THZCHAN_SWEEP_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "thzchan/scenario.hpp"

namespace thz {

// Lightweight pointer back to the realization a sweep was synthesized from.
struct RealizationRef
{
    ScenarioKind scenario = ScenarioKind::MeetingRoom;
    double distance_m = 0.0;
    std::uint64_t seed = 0;
};

// Complex CTF samples over the (elevation x azimuth x frequency) scan grid.
// Direction index = el_idx * n_az + az_idx.
struct SoundingSweep
{
    SystemParams system;
    std::vector<std::vector<std::complex<double>>> ctf; // [dir][sweep point]
    std::optional<RealizationRef> truth;

    std::size_t n_dirs() const { return ctf.size(); }

    double az_of(std::size_t dir) const { return system.az_grid_deg[dir % system.n_az()]; }
    double el_of(std::size_t dir) const { return system.el_grid_deg[dir / system.n_az()]; }

    void validate() const
    {
        system.validate();
        if (ctf.size() != system.n_dirs())
            throw std::invalid_argument("sweep direction count does not match the scan grid");
        for (const auto &h : ctf)
            if (h.size() != static_cast<std::size_t>(system.n_sweep))
                throw std::invalid_argument("sweep frequency count does not match n_sweep");
    }
};

} // namespace thz

#endif
