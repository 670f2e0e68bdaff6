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

#ifndef THZCHAN_RUNNER_HPP
#define THZCHAN_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "thzchan/json_io.hpp"

namespace thz {

inline constexpr const char *kToolVersion = "0.1.0";

struct RunConfig
{
    ScenarioKind kind = ScenarioKind::MeetingRoom;
    std::string config_path;      // optional JSON override file
    int n_drops = 1000;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool calibrate_first = true;  // tune free parameters before the batch
    int n_mc_calibration = 600;
    bool deterministic_part = true;
    bool statistical_part = true;
    bool dump_realizations = false;
    double offset_step_deg = 1.0;
    bool check = false;           // nonzero exit when validation tolerances fail
    double check_tol = 0.07;
    std::string out_dir;          // empty: no files written
};

struct MonteCarloSummary
{
    ScenarioKind kind;
    int n_drops = 0;
    int n_usable = 0;
    double mean_log_ds = 0.0;
    double std_log_ds = 0.0;
    double mean_log_asa = 0.0;
    double std_log_asa = 0.0;
    double mean_n_clusters = 0.0;
    double mean_gap_ns = 0.0;
    double target_mu_log_ds = 0.0;
    double target_mu_log_asa = 0.0;
    bool calibrated = false;
    bool check_passed = true;
    ScenarioParams params;
};

// Generate + analyze n_drops realizations; write per-drop records
// (drops.ndjson), an aggregate (summary.json) and a manifest enabling
// exact reproduction. Byte-identical outputs for identical (config, seed).
MonteCarloSummary run_montecarlo(const RunConfig &cfg);

struct TablesConfig
{
    std::vector<ScenarioKind> kinds = all_scenarios();
    int n_distances = 10;
    std::uint64_t seed = 1;
    bool free_space_reference = false; // trace-free single-path channels
    std::string out_dir;
};

struct PleRow
{
    ScenarioKind kind;
    double ple_best = 0.0;
    double ple_omni = 0.0;
    double sigma_best_db = 0.0;
    double sigma_omni_db = 0.0;
};

// Fit best-direction and omni-directional CI models on synthetic sounding
// sweeps across a distance sweep; emits the PLE table and the parameter
// summary table.
std::vector<PleRow> run_tables(const TablesConfig &cfg);

// Calibrate every scenario and compare a fresh Monte-Carlo ensemble with
// the published mean log spreads; returns true when everything is within
// tolerance. One line per scenario on `os`.
bool run_check(std::ostream &os, int n_drops, std::uint64_t seed, double tol);

} // namespace thz

#endif
