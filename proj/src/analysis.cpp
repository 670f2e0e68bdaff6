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

#include "thzchan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>

#include "thzchan/spread.hpp"

namespace thz {

double noise_threshold_db(double p_max_db, double noise_floor_db)
{
    return std::max(p_max_db - 40.0, noise_floor_db + 10.0);
}

int MpcSet::n_clusters() const
{
    int hi = -1;
    for (const Mpc &m : mpcs)
        hi = std::max(hi, m.label);
    return hi + 1;
}

Pdap pdap_from_sweep(const SoundingSweep &sweep)
{
    sweep.validate();
    const SystemParams &sys = sweep.system;
    const double bin = sys.delay_bin_ns();

    Pdap pdap;
    pdap.az_axis_deg = sys.az_grid_deg;
    pdap.el_axis_deg = sys.el_grid_deg;
    pdap.delay_axis_ns.resize(sys.n_sweep);
    for (int k = 0; k < sys.n_sweep; ++k)
        pdap.delay_axis_ns[k] = k * bin;
    pdap.noise_floor_db = sys.noise_floor_dbm;

    // First pass finds the global peak, second pass keeps entries above the
    // noise-elimination threshold.
    std::vector<std::vector<double>> power(sweep.n_dirs());
    double p_max = -1e300;
    for (std::size_t dir = 0; dir < sweep.n_dirs(); ++dir)
    {
        auto cir = ctf_to_cir(sweep.ctf[dir]);
        power[dir].resize(cir.size());
        for (std::size_t k = 0; k < cir.size(); ++k)
        {
            double p = std::norm(cir[k]);
            power[dir][k] = p > 0.0 ? lin_to_db(p) : -1e300;
            p_max = std::max(p_max, power[dir][k]);
        }
    }
    pdap.threshold_db = noise_threshold_db(p_max, sys.noise_floor_dbm);

    for (std::size_t dir = 0; dir < sweep.n_dirs(); ++dir)
        for (int k = 0; k < sys.n_sweep; ++k)
            if (power[dir][k] >= pdap.threshold_db)
                pdap.entries.push_back(
                    {pdap.delay_axis_ns[k], sweep.az_of(dir), sweep.el_of(dir), power[dir][k], -1});
    return pdap;
}

void write_pdap_csv(std::ostream &os, const Pdap &pdap)
{
    os << "delay_ns,az_deg,el_deg,power_db\n";
    os.precision(12);
    for (const Mpc &m : pdap.entries)
        os << m.toa_ns << ',' << m.aoa_az_deg << ',' << m.aoa_el_deg << ',' << m.power_db << '\n';
}

namespace {

// Precomputed context for the MCD metric over one MPC set.
struct McdContext
{
    std::vector<Vec3> dir;
    std::vector<double> toa;
    double zeta = 5.0;
    double tau_range = 0.0;
    double tau_std = 0.0;

    McdContext(const MpcSet &set, double zeta_in) : zeta(zeta_in)
    {
        const std::size_t n = set.mpcs.size();
        dir.reserve(n);
        toa.reserve(n);
        double mean = 0.0;
        for (const Mpc &m : set.mpcs)
        {
            dir.push_back(azel_to_unit(m.aoa_az_deg, m.aoa_el_deg));
            toa.push_back(m.toa_ns);
            mean += m.toa_ns;
        }
        mean /= static_cast<double>(n);
        double lo = toa[0], hi = toa[0], var = 0.0;
        for (double t : toa)
        {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            var += (t - mean) * (t - mean);
        }
        tau_range = hi - lo;
        tau_std = std::sqrt(var / static_cast<double>(n));
    }

    double operator()(std::size_t i, std::size_t j) const
    {
        Vec3 d = dir[i] - dir[j];
        double ang = 0.5 * d.norm();
        double del = 0.0;
        if (tau_range > 0.0)
            del = zeta * (std::abs(toa[i] - toa[j]) / tau_range) * (tau_std / tau_range);
        return std::sqrt(ang * ang + del * del);
    }
};

} // namespace

int dbscan_mcd(MpcSet &set, const McdParams &params)
{
    if (set.mpcs.empty())
        throw std::invalid_argument("dbscan_mcd: empty MPC set");
    if (params.min_pts < 1 || params.eps <= 0.0)
        throw std::invalid_argument("dbscan_mcd: bad parameters");

    const std::size_t n = set.mpcs.size();
    const McdContext mcd(set, params.zeta);

    auto neighbors = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n; ++j)
            if (mcd(i, j) <= params.eps)
                out.push_back(j); // includes i itself
        return out;
    };

    constexpr int kUnvisited = -2;
    std::vector<int> label(n, kUnvisited);
    int next_cluster = 0;

    for (std::size_t i = 0; i < n; ++i)
    {
        if (label[i] != kUnvisited)
            continue;
        auto seed_neigh = neighbors(i);
        if (static_cast<int>(seed_neigh.size()) < params.min_pts)
        {
            label[i] = -1;
            continue;
        }
        const int cid = next_cluster++;
        label[i] = cid;
        std::deque<std::size_t> queue(seed_neigh.begin(), seed_neigh.end());
        while (!queue.empty())
        {
            std::size_t j = queue.front();
            queue.pop_front();
            if (label[j] == -1)
                label[j] = cid; // border point upgraded from noise
            if (label[j] != kUnvisited)
                continue;
            label[j] = cid;
            auto nb = neighbors(j);
            if (static_cast<int>(nb.size()) >= params.min_pts)
                for (std::size_t k : nb)
                    if (label[k] == kUnvisited || label[k] == -1)
                        queue.push_back(k);
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        set.mpcs[i].label = label[i];
    return next_cluster;
}

double rms_delay_spread_ns(const MpcSet &set)
{
    if (set.mpcs.empty())
        throw std::invalid_argument("rms_delay_spread_ns: empty MPC set");
    std::vector<double> toa(set.mpcs.size()), pw(set.mpcs.size());
    for (std::size_t i = 0; i < set.mpcs.size(); ++i)
    {
        toa[i] = set.mpcs[i].toa_ns;
        pw[i] = db_to_lin(set.mpcs[i].power_db);
    }
    return rms_spread(toa, pw);
}

double rms_asa_deg(const MpcSet &set, double offset_step_deg)
{
    if (set.mpcs.empty())
        throw std::invalid_argument("rms_asa_deg: empty MPC set");
    std::vector<double> az(set.mpcs.size()), pw(set.mpcs.size());
    for (std::size_t i = 0; i < set.mpcs.size(); ++i)
    {
        az[i] = set.mpcs[i].aoa_az_deg;
        pw[i] = db_to_lin(set.mpcs[i].power_db);
    }
    return rms_azimuth_spread_deg(az, pw, offset_step_deg);
}

std::vector<double> inter_cluster_delays_ns(std::vector<double> cluster_toas_ns)
{
    if (cluster_toas_ns.size() < 2)
        throw std::invalid_argument("inter_cluster_delays_ns: need at least two clusters");
    std::sort(cluster_toas_ns.begin(), cluster_toas_ns.end());
    std::vector<double> gaps(cluster_toas_ns.size() - 1);
    for (std::size_t i = 1; i < cluster_toas_ns.size(); ++i)
        gaps[i - 1] = cluster_toas_ns[i] - cluster_toas_ns[i - 1];
    return gaps;
}

std::vector<ClusterEstimate> summarize_clusters(const MpcSet &set, double overlap_correction)
{
    if (overlap_correction <= 0.0)
        throw std::invalid_argument("summarize_clusters: bad overlap correction");
    std::map<int, ClusterEstimate> by_label;
    std::map<int, double> strongest_db;
    for (const Mpc &m : set.mpcs)
    {
        if (m.label < 0)
            continue;
        auto &est = by_label[m.label];
        est.label = m.label;
        est.power_mw += db_to_lin(m.power_db) / overlap_correction;
        ++est.n_mpcs;
        auto it = strongest_db.find(m.label);
        if (it == strongest_db.end() || m.power_db > it->second)
        {
            strongest_db[m.label] = m.power_db;
            est.toa_ns = m.toa_ns;
            est.aoa_az_deg = m.aoa_az_deg;
            est.aoa_el_deg = m.aoa_el_deg;
        }
    }
    std::vector<ClusterEstimate> out;
    out.reserve(by_label.size());
    for (auto &[label, est] : by_label)
        out.push_back(est);
    std::sort(out.begin(), out.end(),
              [](const ClusterEstimate &a, const ClusterEstimate &b) { return a.toa_ns < b.toa_ns; });
    return out;
}

CnlFit cnl_regression(const std::vector<ClusterPowerDelay> &clusters, int ref_index)
{
    if (clusters.size() < 3)
        throw std::invalid_argument("cnl_regression: need a reference and at least two clusters");

    std::size_t ref = 0;
    if (ref_index >= 0)
    {
        ref = static_cast<std::size_t>(ref_index);
        if (ref >= clusters.size())
            throw std::invalid_argument("cnl_regression: reference index out of range");
    }
    else
    {
        for (std::size_t i = 1; i < clusters.size(); ++i)
            if (clusters[i].toa_ns < clusters[ref].toa_ns)
                ref = i;
    }
    const double p_ref = clusters[ref].power;
    if (p_ref <= 0.0)
        throw std::invalid_argument("cnl_regression: reference power must be positive");

    CnlFit fit;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < clusters.size(); ++i)
        if (i != ref)
            others.push_back(i);

    // Categories by received power among the non-reference clusters.
    std::vector<std::size_t> by_power = others;
    std::sort(by_power.begin(), by_power.end(),
              [&](std::size_t a, std::size_t b) { return clusters[a].power > clusters[b].power; });
    std::map<std::size_t, int> category;
    for (std::size_t rank = 0; rank < by_power.size(); ++rank)
        category[by_power[rank]] = rank == 0 ? 0 : (rank == 1 ? 1 : 2);

    for (std::size_t i : others)
    {
        if (clusters[i].power <= 0.0)
            continue;
        CnlPoint pt;
        pt.excess_delay_ns = clusters[i].toa_ns - clusters[ref].toa_ns;
        pt.cnl_db = lin_to_db(p_ref / clusters[i].power);
        pt.category = category[i];
        fit.points.push_back(pt);
    }
    if (fit.points.size() < 2)
        throw std::invalid_argument("cnl_regression: fewer than two usable clusters");

    double sx = 0.0, sy = 0.0;
    for (const CnlPoint &p : fit.points)
    {
        sx += p.excess_delay_ns;
        sy += p.cnl_db;
    }
    const double n = static_cast<double>(fit.points.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const CnlPoint &p : fit.points)
    {
        double dx = p.excess_delay_ns - mx, dy = p.cnl_db - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("cnl_regression: degenerate excess delays");
    fit.slope_db_per_ns = sxy / sxx;
    fit.intercept_db = my - fit.slope_db_per_ns * mx;
    fit.corr = (syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;
    return fit;
}

MpcSet mpcs_from_realization(const ChannelRealization &real)
{
    MpcSet set;
    for (const Cluster &c : real.clusters)
        for (const Subpath &s : c.subpaths)
        {
            double p = s.amplitude * s.amplitude;
            if (p <= 0.0)
                continue;
            set.mpcs.push_back({s.toa_ns, s.aoa_az_deg, s.aoa_el_deg, lin_to_db(p), c.index});
        }
    return set;
}

DropStats analyze_realization(const ChannelRealization &real, double offset_step_deg)
{
    DropStats stats;
    stats.n_clusters = static_cast<int>(real.clusters.size());
    stats.total_power_mw = real.total_power_mw();

    MpcSet set = mpcs_from_realization(real);
    if (set.mpcs.size() >= 2)
    {
        stats.ds_ns = rms_delay_spread_ns(set);
        stats.asa_deg = rms_asa_deg(set, offset_step_deg);
        stats.usable = stats.ds_ns > 1e-9 && stats.asa_deg > 1e-9;
    }

    if (real.clusters.size() >= 2)
    {
        std::vector<double> toas;
        toas.reserve(real.clusters.size());
        for (const Cluster &c : real.clusters)
            toas.push_back(c.toa_ns);
        stats.gaps_ns = inter_cluster_delays_ns(std::move(toas));
    }

    if (real.clusters.size() >= 3)
    {
        std::vector<ClusterPowerDelay> cl;
        int ref = -1;
        for (const Cluster &c : real.clusters)
        {
            if (c.origin == PathOrigin::Los && ref < 0)
                ref = static_cast<int>(cl.size());
            cl.push_back({c.toa_ns, c.power_mw()});
        }
        try
        {
            stats.cnl = cnl_regression(cl, ref);
        }
        catch (const std::invalid_argument &)
        {
            // fewer than two usable non-reference clusters; leave empty
        }
    }
    return stats;
}

} // namespace thz
