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

#ifndef THZCHAN_SCENARIO_HPP
#define THZCHAN_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thzchan/common.hpp"
#include "thzchan/raytracer.hpp"
#include "thzchan/rng.hpp"

namespace thz {

enum class ScenarioKind
{
    MeetingRoom,
    CubicleArea,
    Hallway,
    NLoS
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string &name);
std::vector<ScenarioKind> all_scenarios();

// Per-scenario model parameters for the 201-209 GHz band.
//
// The first block holds values fitted from the measurement campaigns; the
// second block holds free parameters that calibrate() tunes against the
// delay/angular spread targets. mu_log_* are natural logarithms of ns and
// degrees respectively.
struct ScenarioParams
{
    ScenarioKind kind = ScenarioKind::MeetingRoom;
    bool los = true;
    bool deterministic_enabled = false; // traced wall clusters on top of the statistical part

    // fitted parameters
    double ple_best = 2.0;
    double ple_omni = 2.0;
    double lambda_n = 1.0;    // Poisson mean number of clusters
    double mu_log_ds = 0.0;   // mean ln(RMS delay spread / ns)
    double mu_log_asa = 0.0;  // mean ln(RMS azimuth spread / deg)
    double mu_dtau_ns = 1.0;  // mean inter-cluster delay
    double rl_mu_ln = 2.71;   // log-normal location of per-path reflection loss in dB
    double rl_sigma_ln = 0.50;

    // free (calibratable) parameters
    double k_factor_db = 10.0; // Ricean K, LoS cluster vs the rest
    double xi_db = 3.0;        // per-cluster shadowing std
    double r_tau = 2.0;        // delay proportionality factor; r_tau * sigma_tau = mu_dtau
    double r_phi = 1.0;        // cluster angular proportionality factor
    double r_tau_c_ns = 0.5;   // intra-cluster delay scale
    double r_phi_c_deg = 5.0;  // intra-cluster angular proportionality factor
    int m_subpaths = 20;       // subpaths per cluster

    // composition knobs
    bool cluster_count_guard = true; // detectable traced clusters consume Poisson budget
    double guard_rel_db = 10.0;      // traced cluster counts if within this of the strongest
    bool rl_per_bounce = false;      // independent reflection-loss draw per bounce

    double sigma_tau_ns() const { return mu_dtau_ns / r_tau; }
    double mu_asa_deg() const { return std::exp(mu_log_asa); }

    void validate() const; // throws std::invalid_argument
};

// Fitted parameters for the four measured scenarios, with documented
// defaults for the free parameters (run calibrate() to tune them).
ScenarioParams preset(ScenarioKind kind);

// Cross-scenario log-normal fit of the per-path reflection loss in dB:
// (mu_ln, sigma_ln) = (2.71, 0.50). Median exp(2.71) ~= 15.0 dB.
std::pair<double, double> reflection_loss_params();

// Mean log spreads the calibrated model is expected to reproduce in a
// Monte-Carlo ensemble, (mu_log_ds, mu_log_asa).
std::pair<double, double> validation_targets(ScenarioKind kind);

// Frequency sweep, antennas and scan grid of the sounding system.
struct SystemParams
{
    double f_start_ghz = 201.0;
    double f_end_ghz = 209.0;
    int n_sweep = 801;
    double noise_floor_dbm = -140.0;
    double tx_hpbw_deg = 60.0;
    double rx_hpbw_deg = 10.0;
    double tx_gain_dbi = 8.0;
    double rx_gain_dbi = 25.0;
    std::vector<double> az_grid_deg; // defaults to 0:10:350
    std::vector<double> el_grid_deg; // defaults to -20:10:20
    double max_excess_delay_ns = 100.0;
    int window_w = 50;

    double sidelobe_floor_db = -45.0; // pattern floor relative to boresight, power dB
    bool apply_tx_pattern = false;    // Tx misalignment loss is carried by the reflection loss
    bool noise_enabled = true;

    double bandwidth_ghz() const { return f_end_ghz - f_start_ghz; }
    double sweep_interval_ghz() const { return bandwidth_ghz() / (n_sweep - 1); }
    double freq_ghz(int s) const { return f_start_ghz + s * sweep_interval_ghz(); }
    double center_freq_ghz() const { return 0.5 * (f_start_ghz + f_end_ghz); }

    // 1 GHz * 1 ns = 1, so these come out directly in ns.
    double delay_bin_ns() const { return 1.0 / (n_sweep * sweep_interval_ghz()); }
    double alias_period_ns() const { return 1.0 / sweep_interval_ghz(); }

    std::size_t n_az() const { return az_grid_deg.size(); }
    std::size_t n_el() const { return el_grid_deg.size(); }
    std::size_t n_dirs() const { return n_az() * n_el(); }

    void validate() const;
};

// Table-of-record sounding configuration; the noise floor is -160 dBm in
// the meeting room campaign and -140 dBm in the office campaign.
SystemParams preset_system(ScenarioKind kind);

// Room box, Tx placement and reflective surfaces used for each scenario.
RoomGeometry preset_geometry(ScenarioKind kind);

// Same room with the Rx placed at (approximately) the requested Tx-Rx
// distance along the measured deployment line.
RoomGeometry geometry_at_distance(ScenarioKind kind, double distance_m);

// Random Rx placement covering the measured deployment envelope; used by
// Monte-Carlo drops and calibration.
RoomGeometry sample_drop_geometry(ScenarioKind kind, Rng &rng);

} // namespace thz

#endif
