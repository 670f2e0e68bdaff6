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

#include "thzchan/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace thz {

std::string to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::MeetingRoom: return "meeting_room";
    case ScenarioKind::CubicleArea: return "cubicle_area";
    case ScenarioKind::Hallway: return "hallway";
    case ScenarioKind::NLoS: return "nlos";
    }
    throw std::invalid_argument("unknown scenario kind");
}

ScenarioKind scenario_from_string(const std::string &name)
{
    for (ScenarioKind k : all_scenarios())
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown scenario name: " + name);
}

std::vector<ScenarioKind> all_scenarios()
{
    return {ScenarioKind::MeetingRoom, ScenarioKind::CubicleArea, ScenarioKind::Hallway,
            ScenarioKind::NLoS};
}

void ScenarioParams::validate() const
{
    if (lambda_n <= 0.0)
        throw std::invalid_argument("lambda_n must be > 0");
    if (mu_dtau_ns <= 0.0)
        throw std::invalid_argument("mu_dtau_ns must be > 0");
    if (rl_sigma_ln <= 0.0)
        throw std::invalid_argument("rl_sigma_ln must be > 0");
    if (r_tau < 1.0)
        throw std::invalid_argument("r_tau must be >= 1 (power decay exponent flips sign below 1)");
    if (r_phi <= 0.0)
        throw std::invalid_argument("r_phi must be > 0");
    if (r_tau_c_ns <= 0.0)
        throw std::invalid_argument("r_tau_c_ns must be > 0");
    if (r_phi_c_deg <= 0.0)
        throw std::invalid_argument("r_phi_c_deg must be > 0");
    if (xi_db < 0.0)
        throw std::invalid_argument("xi_db must be >= 0");
    if (m_subpaths < 1)
        throw std::invalid_argument("m_subpaths must be >= 1");
    if (guard_rel_db < 0.0)
        throw std::invalid_argument("guard_rel_db must be >= 0");
}

ScenarioParams preset(ScenarioKind kind)
{
    ScenarioParams p;
    p.kind = kind;
    std::tie(p.rl_mu_ln, p.rl_sigma_ln) = reflection_loss_params();

    switch (kind)
    {
    case ScenarioKind::MeetingRoom:
        p.los = true;
        p.deterministic_enabled = true;
        p.ple_best = 2.13;
        p.ple_omni = 1.68;
        p.lambda_n = 5.94;
        p.mu_log_ds = 1.50;
        p.mu_log_asa = 3.38;
        p.mu_dtau_ns = 11.89;
        break;
    case ScenarioKind::CubicleArea:
        p.los = true;
        p.deterministic_enabled = false;
        p.ple_best = 2.22;
        p.ple_omni = 1.79;
        p.lambda_n = 3.79;
        p.mu_log_ds = 1.91;
        p.mu_log_asa = 3.61;
        p.mu_dtau_ns = 12.68;
        break;
    case ScenarioKind::Hallway:
        p.los = true;
        p.deterministic_enabled = true;
        p.ple_best = 1.98;
        p.ple_omni = 1.50;
        p.lambda_n = 2.57;
        p.mu_log_ds = 1.20;
        p.mu_log_asa = 3.00;
        p.mu_dtau_ns = 40.68;
        break;
    case ScenarioKind::NLoS:
        p.los = false;
        p.deterministic_enabled = false;
        p.ple_best = 3.59;
        p.ple_omni = 2.82;
        p.lambda_n = 2.10;
        p.mu_log_ds = 2.83;
        p.mu_log_asa = 4.01;
        p.mu_dtau_ns = 18.48;
        break;
    }

    p.validate();
    return p;
}

std::pair<double, double> reflection_loss_params()
{
    return {2.71, 0.50};
}

std::pair<double, double> validation_targets(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::MeetingRoom: return {1.50, 3.39};
    case ScenarioKind::CubicleArea: return {1.91, 3.55};
    case ScenarioKind::Hallway: return {1.18, 2.99};
    case ScenarioKind::NLoS: return {2.79, 4.06};
    }
    throw std::invalid_argument("unknown scenario kind");
}

void SystemParams::validate() const
{
    if (n_sweep < 2)
        throw std::invalid_argument("n_sweep must be >= 2");
    if (f_end_ghz <= f_start_ghz)
        throw std::invalid_argument("f_end_ghz must exceed f_start_ghz");
    if (window_w < 1 || window_w > n_sweep)
        throw std::invalid_argument("window_w must be in [1, n_sweep]");
    if (az_grid_deg.empty() || el_grid_deg.empty())
        throw std::invalid_argument("scan grids must be non-empty");
    if (tx_hpbw_deg <= 0.0 || rx_hpbw_deg <= 0.0)
        throw std::invalid_argument("beamwidths must be positive");
}

SystemParams preset_system(ScenarioKind kind)
{
    SystemParams s;
    for (int a = 0; a < 360; a += 10)
        s.az_grid_deg.push_back(static_cast<double>(a));
    for (int e = -20; e <= 20; e += 10)
        s.el_grid_deg.push_back(static_cast<double>(e));
    // The meeting room campaign used shorter cables and reached a lower
    // noise floor than the office campaign.
    s.noise_floor_dbm = (kind == ScenarioKind::MeetingRoom) ? -160.0 : -140.0;
    s.validate();
    return s;
}

RoomGeometry preset_geometry(ScenarioKind kind)
{
    RoomGeometry g;
    switch (kind)
    {
    case ScenarioKind::MeetingRoom:
        // 10.15 m x 7.9 m meeting room, 5.8 m ceiling, Tx near a corner.
        // Only the walls reflect; table/chair scatter is left to the
        // statistical part.
        g.length_m = 10.15;
        g.width_m = 7.9;
        g.height_m = 5.8;
        g.tx = {0.7, 0.7, 1.5};
        g.rx = {5.0, 4.5, 1.5};
        g.active_surfaces = {Surface::XMin, Surface::XMax, Surface::YMin, Surface::YMax};
        g.max_reflection_order = 2;
        break;
    case ScenarioKind::CubicleArea:
        // 30 m x 20 m office; traced reflections are disabled here, the box
        // only provides distances and the first-arrival anchor.
        g.length_m = 30.0;
        g.width_m = 20.0;
        g.height_m = 3.0;
        g.tx = {12.0, 10.0, 1.5};
        g.rx = {17.0, 10.0, 1.5};
        g.active_surfaces = {};
        g.max_reflection_order = 0;
        break;
    case ScenarioKind::Hallway:
        // 30 m corridor along x; Tx sits 0.8 m from the near wall. Side
        // walls, ground and ceiling reflect; the corridor ends are open.
        // Antennas are mounted below mid-height so the ground and ceiling
        // echoes stay resolvable.
        g.length_m = 30.0;
        g.width_m = 2.5;
        g.height_m = 3.0;
        g.tx = {0.5, 0.8, 1.4};
        g.rx = {10.5, 1.25, 1.4};
        g.active_surfaces = {Surface::YMin, Surface::YMax, Surface::Floor, Surface::Ceiling};
        g.max_reflection_order = 2;
        break;
    case ScenarioKind::NLoS:
        g.length_m = 30.0;
        g.width_m = 20.0;
        g.height_m = 3.0;
        g.tx = {2.0, 2.0, 1.5};
        g.rx = {10.0, 8.0, 1.5};
        g.active_surfaces = {};
        g.max_reflection_order = 0;
        break;
    }
    g.validate();
    return g;
}

namespace {

// Measured Tx-Rx distance spans per scenario.
std::pair<double, double> distance_range(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::MeetingRoom: return {2.0, 9.0};
    case ScenarioKind::CubicleArea: return {3.5, 14.0};
    case ScenarioKind::Hallway: return {2.0, 28.5};
    case ScenarioKind::NLoS: return {3.75, 20.0};
    }
    throw std::invalid_argument("unknown scenario kind");
}

RoomGeometry place_rx_at(ScenarioKind kind, RoomGeometry g, double d, double lateral_frac)
{
    switch (kind)
    {
    case ScenarioKind::MeetingRoom:
    {
        // Rx fan across the room interior at the requested distance.
        double az = deg2rad(20.0 + 50.0 * lateral_frac);
        Vec3 rx = {g.tx.x + d * std::cos(az), g.tx.y + d * std::sin(az), g.tx.z};
        rx.x = std::clamp(rx.x, 0.5, g.length_m - 0.5);
        rx.y = std::clamp(rx.y, 0.5, g.width_m - 0.5);
        g.rx = rx;
        break;
    }
    case ScenarioKind::Hallway:
        // Down the corridor with a small lateral spread.
        g.rx = {std::clamp(g.tx.x + d, 1.0, g.length_m - 0.5),
                std::clamp(0.9 + 0.7 * lateral_frac, 0.3, g.width_m - 0.3), g.tx.z};
        break;
    case ScenarioKind::CubicleArea:
    case ScenarioKind::NLoS:
    {
        // Fan of directions with enough clearance for the whole measured
        // distance span; the final clamp is a safety net only.
        double az = kind == ScenarioKind::CubicleArea ? deg2rad(-35.0 + 70.0 * lateral_frac)
                                                      : deg2rad(15.0 + 45.0 * lateral_frac);
        Vec3 rx = {g.tx.x + d * std::cos(az), g.tx.y + d * std::sin(az), g.tx.z};
        rx.x = std::clamp(rx.x, 0.5, g.length_m - 0.5);
        rx.y = std::clamp(rx.y, 0.5, g.width_m - 0.5);
        g.rx = rx;
        break;
    }
    }
    return g;
}

} // namespace

RoomGeometry geometry_at_distance(ScenarioKind kind, double distance_m)
{
    if (distance_m <= 0.0)
        throw std::invalid_argument("distance must be positive");
    RoomGeometry g = place_rx_at(kind, preset_geometry(kind), distance_m, 0.5);
    g.validate();
    return g;
}

RoomGeometry sample_drop_geometry(ScenarioKind kind, Rng &rng)
{
    auto [d_lo, d_hi] = distance_range(kind);
    double d = rng.uniform(d_lo, d_hi);
    double lateral = rng.uniform();
    RoomGeometry g = place_rx_at(kind, preset_geometry(kind), d, lateral);
    g.validate();
    return g;
}

} // namespace thz
