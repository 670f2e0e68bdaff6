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

#ifndef THZCHAN_ANALYSIS_HPP
#define THZCHAN_ANALYSIS_HPP

#include <iosfwd>
#include <vector>

#include "thzchan/dft.hpp"
#include "thzchan/stochastic.hpp"
#include "thzchan/sweep.hpp"

namespace thz {

// Noise-elimination threshold: max(strongest power - 40 dB, floor + 10 dB).
double noise_threshold_db(double p_max_db, double noise_floor_db);

// One detected multipath component; label -1 marks an outlier.
struct Mpc
{
    double toa_ns = 0.0;
    double aoa_az_deg = 0.0;
    double aoa_el_deg = 0.0;
    double power_db = 0.0;
    int label = -1;
};

struct MpcSet
{
    std::vector<Mpc> mpcs;
    int n_clusters() const; // clusters found so far, outliers excluded
};

// Power-delay-angular profile kept sparse: entries below the threshold are
// absent by construction.
struct Pdap
{
    std::vector<double> delay_axis_ns;
    std::vector<double> az_axis_deg;
    std::vector<double> el_axis_deg;
    double noise_floor_db = 0.0;
    double threshold_db = 0.0;
    std::vector<Mpc> entries;

    MpcSet to_mpcs() const { return MpcSet{entries}; }
};

// IDFT per scanned direction, thresholded against the configured floor.
Pdap pdap_from_sweep(const SoundingSweep &sweep);

// CSV rows (delay_ns, az_deg, el_deg, power_db) for heatmap plotting.
void write_pdap_csv(std::ostream &os, const Pdap &pdap);

// Multipath-component distance used as the DBSCAN metric. The angular term
// is half the Euclidean distance between AoA unit vectors; the delay term
// is zeta * (|dtau| / tau_range) * (tau_std / tau_range).
struct McdParams
{
    double zeta = 5.0;
    double eps = 0.05;
    int min_pts = 5;
};

// Plain DBSCAN over the MCD metric; labels the set in place and returns
// the number of clusters found.
int dbscan_mcd(MpcSet &set, const McdParams &params = {});

// Power-weighted second-central-moment spreads.
double rms_delay_spread_ns(const MpcSet &set);
double rms_asa_deg(const MpcSet &set, double offset_step_deg = 1.0);

// Sorted adjacent ToA differences.
std::vector<double> inter_cluster_delays_ns(std::vector<double> cluster_toas_ns);

// Cluster summary extracted from a labeled MPC set. The cluster delay is
// the ToA of its strongest component; power sums are divided by the beam
// overlap correction.
struct ClusterEstimate
{
    int label = -1;
    double toa_ns = 0.0;
    double power_mw = 0.0;
    double aoa_az_deg = 0.0;
    double aoa_el_deg = 0.0;
    int n_mpcs = 0;
};
std::vector<ClusterEstimate> summarize_clusters(const MpcSet &set, double overlap_correction = 1.0);

// Normalized cluster loss regression against excess delay. Category 0 is
// the strongest non-reference cluster, 1 the second strongest, 2 the rest.
struct CnlPoint
{
    double excess_delay_ns = 0.0;
    double cnl_db = 0.0;
    int category = 2;
};
struct CnlFit
{
    double slope_db_per_ns = 0.0;
    double intercept_db = 0.0;
    double corr = 0.0;
    std::vector<CnlPoint> points;
};

struct ClusterPowerDelay
{
    double toa_ns = 0.0;
    double power = 0.0; // any common linear unit
};

// ref_index < 0 picks the earliest cluster as the reference.
CnlFit cnl_regression(const std::vector<ClusterPowerDelay> &clusters, int ref_index = -1);

// ---- realization-level statistics --------------------------------------

MpcSet mpcs_from_realization(const ChannelRealization &real);

struct DropStats
{
    double ds_ns = 0.0;
    double asa_deg = 0.0;
    int n_clusters = 0;
    double total_power_mw = 0.0;
    std::vector<double> gaps_ns;
    CnlFit cnl;
    bool usable = false; // at least two rays with positive spreads
};

DropStats analyze_realization(const ChannelRealization &real, double offset_step_deg = 1.0);

} // namespace thz

#endif
