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

#include "thzchan/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thzchan/spread.hpp"

namespace thz {

std::string to_string(PathOrigin origin)
{
    switch (origin)
    {
    case PathOrigin::Los: return "los";
    case PathOrigin::Deterministic: return "deterministic";
    case PathOrigin::Statistical: return "statistical";
    }
    throw std::invalid_argument("unknown path origin");
}

PathOrigin origin_from_string(const std::string &name)
{
    if (name == "los")
        return PathOrigin::Los;
    if (name == "deterministic")
        return PathOrigin::Deterministic;
    if (name == "statistical")
        return PathOrigin::Statistical;
    throw std::invalid_argument("unknown path origin: " + name);
}

double Cluster::power_mw() const
{
    double acc = 0.0;
    for (const Subpath &s : subpaths)
        acc += s.amplitude * s.amplitude;
    return acc;
}

double ChannelRealization::total_power_mw() const
{
    double acc = 0.0;
    for (const Cluster &c : clusters)
        acc += c.power_mw();
    return acc;
}

std::size_t ChannelRealization::n_subpaths() const
{
    std::size_t n = 0;
    for (const Cluster &c : clusters)
        n += c.subpaths.size();
    return n;
}

// ---- samplers ----------------------------------------------------------

int sample_num_clusters(double lambda_n, bool los_clamp, Rng &rng)
{
    if (lambda_n <= 0.0)
        throw std::invalid_argument("sample_num_clusters: lambda_n must be > 0");
    int n = rng.poisson(lambda_n);
    return los_clamp ? std::max(1, n) : n;
}

double exponential_gap_ns(double mean_gap_ns, double u)
{
    if (mean_gap_ns <= 0.0)
        throw std::invalid_argument("exponential_gap_ns: mean must be > 0");
    if (u <= 0.0 || u > 1.0)
        throw std::invalid_argument("exponential_gap_ns: u must be in (0, 1]");
    return -mean_gap_ns * std::log(u);
}

std::vector<double> sample_cluster_delays(int n, double r_tau, double sigma_tau_ns,
                                          double anchor_ns, Rng &rng)
{
    if (n < 1)
        throw std::invalid_argument("sample_cluster_delays: n must be >= 1");
    const double mean_gap = r_tau * sigma_tau_ns;
    if (mean_gap <= 0.0)
        throw std::invalid_argument("sample_cluster_delays: r_tau * sigma_tau must be > 0");

    std::vector<double> toa(n);
    toa[0] = anchor_ns;
    for (int i = 1; i < n; ++i)
        toa[i] = toa[i - 1] + exponential_gap_ns(mean_gap, rng.uniform());
    return toa;
}

std::vector<double> sample_cluster_powers(const std::vector<double> &delays_ns, double r_tau,
                                          double sigma_tau_ns, double xi_db, double k_factor_db,
                                          bool los, Rng &rng)
{
    if (delays_ns.empty())
        throw std::invalid_argument("sample_cluster_powers: no clusters");
    if (xi_db < 0.0)
        throw std::invalid_argument("sample_cluster_powers: xi_db must be >= 0");

    const std::size_t n = delays_ns.size();
    const double decay = (r_tau - 1.0) / (r_tau * sigma_tau_ns);

    // Unnormalized powers, exponential decay over excess delay with
    // per-cluster shadowing. The first (LoS) cluster is handled by the K
    // split instead when los is set.
    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double z = rng.normal() * xi_db;
        raw[i] = std::exp(-(delays_ns[i] - delays_ns[0]) * decay) * db_to_lin(-z);
    }

    std::vector<double> frac(n, 0.0);
    if (los)
    {
        const double k_lin = db_to_lin(k_factor_db);
        if (n == 1)
        {
            frac[0] = 1.0;
            return frac;
        }
        frac[0] = k_lin / (k_lin + 1.0);
        double rest = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            rest += raw[i];
        for (std::size_t i = 1; i < n; ++i)
            frac[i] = raw[i] / rest / (k_lin + 1.0);
    }
    else
    {
        double total = 0.0;
        for (double r : raw)
            total += r;
        for (std::size_t i = 0; i < n; ++i)
            frac[i] = raw[i] / total;
    }
    return frac;
}

std::vector<double> sample_cluster_aoas(const std::vector<double> &power_fracs, double r_phi,
                                        double mu_asa_deg, Rng &rng)
{
    if (power_fracs.empty())
        throw std::invalid_argument("sample_cluster_aoas: no clusters");
    double pmax = *std::max_element(power_fracs.begin(), power_fracs.end());
    if (pmax <= 0.0)
        throw std::invalid_argument("sample_cluster_aoas: max power must be > 0");

    std::vector<double> aoa(power_fracs.size());
    for (std::size_t i = 0; i < power_fracs.size(); ++i)
    {
        double ratio = std::min(power_fracs[i] / pmax, 1.0);
        double mag = r_phi * mu_asa_deg * std::sqrt(-std::log(ratio));
        aoa[i] = wrap_deg(rng.sign() * mag);
    }
    return aoa;
}

std::vector<Subpath> sample_subpaths(double cluster_toa_ns, double cluster_aoa_deg, int m_subpaths,
                                     double r_tau_c_ns, double r_phi_c_deg, Rng &rng)
{
    if (m_subpaths < 1)
        throw std::invalid_argument("sample_subpaths: m_subpaths must be >= 1");

    std::vector<Subpath> subs(m_subpaths);

    // Intra-cluster arrivals form a Poisson process starting at the cluster
    // ToA; powers decay over intra-cluster excess delay with the same time
    // constant and are normalized within the cluster.
    std::vector<double> excess(m_subpaths, 0.0);
    for (int m = 1; m < m_subpaths; ++m)
        excess[m] = excess[m - 1] + exponential_gap_ns(r_tau_c_ns, rng.uniform());

    std::vector<double> p(m_subpaths);
    double total = 0.0;
    for (int m = 0; m < m_subpaths; ++m)
    {
        p[m] = std::exp(-excess[m] / r_tau_c_ns);
        total += p[m];
    }

    // The first subpath has zero excess delay, so it is always the
    // strongest and anchors the angular mapping at zero offset.
    for (int m = 0; m < m_subpaths; ++m)
    {
        double frac = p[m] / total;
        double ratio = p[m] / p[0];
        double offset = rng.sign() * r_phi_c_deg * std::sqrt(-std::log(std::min(ratio, 1.0)));
        subs[m].toa_ns = cluster_toa_ns + excess[m];
        subs[m].aoa_az_deg = wrap_deg(cluster_aoa_deg + offset);
        subs[m].aoa_el_deg = 0.0;
        subs[m].phase_rad = rng.uniform() * 2.0 * kPi;
        subs[m].power_frac_within_cluster = frac;
    }
    subs[0].aoa_az_deg = wrap_deg(cluster_aoa_deg); // strongest: zero offset exactly
    return subs;
}

// ---- composition -------------------------------------------------------

namespace {

// Aggregate reflection loss of one traced path. A single draw covers Tx
// misalignment and multi-bounce attenuation; the per-bounce mode draws
// independently per reflection instead.
double sample_reflection_loss_db(const ScenarioParams &p, int order, Rng &rng)
{
    if (order == 0)
        return 0.0;
    if (!p.rl_per_bounce)
        return rng.lognormal(p.rl_mu_ln, p.rl_sigma_ln);
    double rl = 0.0;
    for (int b = 0; b < order; ++b)
        rl += rng.lognormal(p.rl_mu_ln, p.rl_sigma_ln);
    return rl;
}

} // namespace

ChannelRealization generate(const ScenarioParams &params, const RoomGeometry &geom,
                            std::uint64_t seed, const GenerateOptions &opts)
{
    params.validate();
    geom.validate();

    Rng rng(seed);

    const double d = geom.tx_rx_distance();
    const double tau_los = distance_to_delay_ns(d);
    const double boresight_az = azimuth_deg(geom.tx - geom.rx);
    const Vec3 tx_boresight = (geom.rx - geom.tx).normalized();

    ChannelRealization real;
    real.scenario = params.kind;
    real.distance_m = d;
    real.seed = seed;
    real.f_ref_ghz = opts.f_ref_ghz;

    CiModel ci{params.ple_omni, 1.0, 0.0, opts.f_ref_ghz};
    real.pl_omni_db = ci_eval_db(ci, std::max(d, ci.d0_m));
    const double budget_mw = db_to_lin(-real.pl_omni_db);

    const bool det_on = params.deterministic_enabled && opts.deterministic_part;
    const bool stat_on = opts.statistical_part;

    // Deterministic part: traced clusters with physically scaled
    // amplitudes. Reflection losses are drawn in ToA order.
    std::vector<Cluster> det_clusters;
    bool have_det_los = false;
    int n_detectable_walls = 0;
    if (det_on)
    {
        auto paths = trace(geom, geom.max_reflection_order, opts.f_ref_ghz);
        det_clusters.reserve(paths.size());
        for (const TracedPath &path : paths)
        {
            Cluster c;
            c.toa_ns = path.toa_ns;
            c.aoa_az_deg = wrap_deg(path.aoa_az_deg - boresight_az);
            c.origin = path.reflection_order == 0 ? PathOrigin::Los : PathOrigin::Deterministic;
            c.reflection_order = path.reflection_order;
            c.rl_db = sample_reflection_loss_db(params, path.reflection_order, rng);
            c.aod_off_boresight_deg = angle_between_deg(path.aod, tx_boresight);

            double tx_lobe = 1.0;
            if (opts.tx_lobe_on_traced && path.reflection_order > 0)
            {
                double x = c.aod_off_boresight_deg / opts.tx_hpbw_deg;
                tx_lobe = std::sqrt(std::max(std::exp(-4.0 * std::log(2.0) * x * x),
                                             db_to_lin(opts.tx_lobe_floor_db)));
            }

            Subpath s;
            s.toa_ns = path.toa_ns;
            s.aoa_az_deg = c.aoa_az_deg;
            s.aoa_el_deg = path.aoa_el_deg;
            s.amplitude = tx_lobe * path_gain(path.toa_ns, opts.f_ref_ghz, c.rl_db);
            s.phase_rad = 0.0;
            s.power_frac_within_cluster = 1.0;
            c.subpaths.push_back(s);
            have_det_los = have_det_los || c.origin == PathOrigin::Los;
            det_clusters.push_back(std::move(c));
        }

        // Traced clusters strong enough to register as measured clusters
        // consume part of the Poisson cluster budget.
        double pmax = 0.0;
        for (const Cluster &c : det_clusters)
            pmax = std::max(pmax, c.power_mw());
        const double floor = pmax * db_to_lin(-params.guard_rel_db);
        for (const Cluster &c : det_clusters)
            if (c.origin == PathOrigin::Deterministic && c.power_mw() >= floor)
                ++n_detectable_walls;
    }

    std::vector<Cluster> stat_clusters;
    if (stat_on)
    {
        int n = sample_num_clusters(params.lambda_n, params.los, rng);
        if (det_on && params.cluster_count_guard)
            n = params.los ? std::max(1, n - n_detectable_walls) : std::max(0, n - n_detectable_walls);

        if (n > 0)
        {
            // LoS scenarios anchor the first cluster at the geometric LoS
            // delay; without a LoS path the first arrival is pushed out by
            // one exponential gap.
            double anchor = params.los ? tau_los : tau_los + rng.exponential(params.mu_dtau_ns);
            auto delays = sample_cluster_delays(n, params.r_tau, params.sigma_tau_ns(), anchor, rng);
            auto fracs = sample_cluster_powers(delays, params.r_tau, params.sigma_tau_ns(),
                                               params.xi_db, params.k_factor_db, params.los, rng);
            auto aoas = sample_cluster_aoas(fracs, params.r_phi, params.mu_asa_deg(), rng);

            // Cluster power scale. Statistical clusters follow the omni CI
            // budget. When the traced part is active, the LoS cluster keeps
            // the free-space amplitude of the traced direct ray instead of
            // the Ricean share, so best-direction loss stays Friis-like
            // while the K factor still sets the relative NLoS level.
            const double friis_amp = path_gain(tau_los, opts.f_ref_ghz, 0.0);
            for (int i = 0; i < n; ++i)
            {
                const bool is_los_cluster = params.los && i == 0;
                Cluster c;
                c.toa_ns = delays[i];
                c.aoa_az_deg = is_los_cluster ? 0.0 : aoas[i];
                c.origin = is_los_cluster ? PathOrigin::Los : PathOrigin::Statistical;
                c.subpaths = sample_subpaths(c.toa_ns, c.aoa_az_deg, params.m_subpaths,
                                             params.r_tau_c_ns, params.r_phi_c_deg, rng);
                double cluster_mw = (is_los_cluster && det_on && have_det_los)
                                        ? friis_amp * friis_amp
                                        : fracs[i] * budget_mw;
                for (Subpath &s : c.subpaths)
                    s.amplitude = std::sqrt(cluster_mw * s.power_frac_within_cluster);
                stat_clusters.push_back(std::move(c));
            }
        }
    }

    // The statistical LoS cluster describes the same arrival as the traced
    // direct ray; keep the dispersed statistical version.
    if (det_on && stat_on && !stat_clusters.empty() &&
        stat_clusters.front().origin == PathOrigin::Los)
    {
        std::erase_if(det_clusters, [](const Cluster &c) { return c.origin == PathOrigin::Los; });
    }

    real.clusters.reserve(det_clusters.size() + stat_clusters.size());
    for (Cluster &c : det_clusters)
        real.clusters.push_back(std::move(c));
    for (Cluster &c : stat_clusters)
        real.clusters.push_back(std::move(c));
    std::stable_sort(real.clusters.begin(), real.clusters.end(),
                     [](const Cluster &a, const Cluster &b) { return a.toa_ns < b.toa_ns; });

    // Traced arrivals from exactly symmetric geometry can coincide in time;
    // such echoes are unresolvable and belong to one cluster.
    for (std::size_t i = 1; i < real.clusters.size();)
    {
        Cluster &prev = real.clusters[i - 1];
        Cluster &cur = real.clusters[i];
        if (cur.toa_ns - prev.toa_ns < 1e-9)
        {
            if (cur.power_mw() > prev.power_mw())
            {
                prev.aoa_az_deg = cur.aoa_az_deg;
                prev.origin = cur.origin;
                prev.reflection_order = cur.reflection_order;
                prev.rl_db = cur.rl_db;
                prev.aod_off_boresight_deg = cur.aod_off_boresight_deg;
            }
            prev.subpaths.insert(prev.subpaths.end(), cur.subpaths.begin(), cur.subpaths.end());
            std::stable_sort(prev.subpaths.begin(), prev.subpaths.end(),
                             [](const Subpath &a, const Subpath &b) { return a.toa_ns < b.toa_ns; });
            real.clusters.erase(real.clusters.begin() + static_cast<std::ptrdiff_t>(i));
        }
        else
            ++i;
    }

    const double total = real.total_power_mw();
    for (std::size_t i = 0; i < real.clusters.size(); ++i)
    {
        real.clusters[i].index = static_cast<int>(i);
        real.clusters[i].power_frac = total > 0.0 ? real.clusters[i].power_mw() / total : 0.0;
    }
    return real;
}

// ---- calibration -------------------------------------------------------

namespace {

struct SpreadAccumulator
{
    double sum_log_ds = 0.0;
    double sum_log_asa = 0.0;
    int n = 0;

    void add(const ChannelRealization &real, double offset_step_deg)
    {
        std::vector<double> toa, az, pw;
        for (const Cluster &c : real.clusters)
            for (const Subpath &s : c.subpaths)
            {
                toa.push_back(s.toa_ns);
                az.push_back(s.aoa_az_deg);
                pw.push_back(s.amplitude * s.amplitude);
            }
        if (toa.size() < 2)
            return;
        double ds = rms_spread(toa, pw);
        double asa = rms_azimuth_spread_deg(az, pw, offset_step_deg);
        if (ds <= 1e-9 || asa <= 1e-9)
            return;
        sum_log_ds += std::log(ds);
        sum_log_asa += std::log(asa);
        ++n;
    }
};

std::pair<double, double> mean_log_spreads(const ScenarioParams &params, int n_drops,
                                           std::uint64_t seed, double offset_step_deg)
{
    SpreadAccumulator acc;
    for (int i = 0; i < n_drops; ++i)
    {
        Rng geom_rng(Rng::derive(seed, 2 * static_cast<std::uint64_t>(i)));
        RoomGeometry geom = sample_drop_geometry(params.kind, geom_rng);
        ChannelRealization real =
            generate(params, geom, Rng::derive(seed, 2 * static_cast<std::uint64_t>(i) + 1));
        acc.add(real, offset_step_deg);
    }
    if (acc.n == 0)
        throw std::runtime_error("mean_log_spreads: no usable drops");
    return {acc.sum_log_ds / acc.n, acc.sum_log_asa / acc.n};
}

struct Coordinate
{
    double ScenarioParams::*field;
    double lo;
    double hi;
    double step; // initial multiplicative-ish step in native units
};

} // namespace

std::pair<double, double> ensemble_mean_log_spreads(const ScenarioParams &params, int n_drops,
                                                    std::uint64_t seed, double offset_step_deg)
{
    return mean_log_spreads(params, n_drops, seed, offset_step_deg);
}

CalibrationResult calibrate(const ScenarioParams &params, double target_mu_log_ds,
                            double target_mu_log_asa, int n_mc, const CalibrateOptions &opts)
{
    params.validate();
    if (n_mc < 500)
        throw std::invalid_argument("calibrate: n_mc must be >= 500");
    if (!std::isfinite(target_mu_log_ds) || !std::isfinite(target_mu_log_asa))
        throw std::invalid_argument("calibrate: targets must be finite");
    // A multi-cluster channel cannot have vanishing spreads; ln targets far
    // below one picosecond / one millidegree are unreachable.
    if (target_mu_log_ds < -7.0 || target_mu_log_asa < -7.0)
        throw std::invalid_argument("calibrate: degenerate spread target");

    std::vector<Coordinate> coords;
    if (params.los)
        coords.push_back({&ScenarioParams::k_factor_db, -10.0, 30.0, 4.0});
    coords.push_back({&ScenarioParams::r_tau, 1.001, 8.0, 0.8});
    coords.push_back({&ScenarioParams::xi_db, 0.0, 8.0, 1.5});
    coords.push_back({&ScenarioParams::r_tau_c_ns, 0.02, 40.0, 0.0}); // log-stepped below
    coords.push_back({&ScenarioParams::r_phi, 0.02, 6.0, 0.0});
    coords.push_back({&ScenarioParams::r_phi_c_deg, 0.5, 60.0, 0.0});

    CalibrationResult result;
    result.params = params;
    int n_evals = 0;
    double best_ds = 0.0, best_asa = 0.0;

    // Coordinate descent with common random numbers makes each phase a
    // deterministic search; the second phase re-anchors on a fresh seed
    // with more drops so the result does not overfit the first seed's
    // sampling noise.
    auto descend = [&](std::uint64_t seed, int drops, int sweeps, double shrink0) {
        auto objective = [&](const ScenarioParams &p, double &ds, double &asa) {
            auto [mds, masa] = mean_log_spreads(p, drops, seed, opts.offset_step_deg);
            ds = mds;
            asa = masa;
            double eds = mds - target_mu_log_ds;
            double easa = masa - target_mu_log_asa;
            return eds * eds + easa * easa;
        };

        double best_err = objective(result.params, best_ds, best_asa);
        ++n_evals;
        auto within_tol = [&]() {
            return std::abs(best_ds - target_mu_log_ds) <= opts.tol &&
                   std::abs(best_asa - target_mu_log_asa) <= opts.tol;
        };

        for (int sweep = 0; sweep < sweeps && !within_tol(); ++sweep)
        {
            const double shrink = shrink0 * std::pow(0.5, sweep);
            for (const Coordinate &coord : coords)
            {
                // Additive step for bounded linear coordinates,
                // multiplicative for scale-like ones (step == 0).
                for (int iter = 0; iter < 6; ++iter)
                {
                    double cur = result.params.*(coord.field);
                    double delta = coord.step > 0.0 ? coord.step * shrink : 0.0;
                    double up = coord.step > 0.0 ? cur + delta : cur * (1.0 + 0.6 * shrink);
                    double dn = coord.step > 0.0 ? cur - delta : cur / (1.0 + 0.6 * shrink);
                    up = std::clamp(up, coord.lo, coord.hi);
                    dn = std::clamp(dn, coord.lo, coord.hi);

                    bool moved = false;
                    for (double cand : {up, dn})
                    {
                        if (cand == cur)
                            continue;
                        ScenarioParams trial = result.params;
                        trial.*(coord.field) = cand;
                        double tds = 0.0, tasa = 0.0;
                        double err = objective(trial, tds, tasa);
                        ++n_evals;
                        if (err < best_err)
                        {
                            best_err = err;
                            best_ds = tds;
                            best_asa = tasa;
                            result.params = trial;
                            moved = true;
                            break;
                        }
                    }
                    if (!moved)
                        break;
                }
                if (within_tol())
                    break;
            }
        }
        return within_tol();
    };

    descend(opts.seed, n_mc, opts.max_sweeps, 1.0);
    bool converged = descend(Rng::derive(opts.seed, 0xCA1), 2 * n_mc, 2, 0.35);

    result.achieved_mu_log_ds = best_ds;
    result.achieved_mu_log_asa = best_asa;
    result.converged = converged;
    result.n_evals = n_evals;
    return result;
}

} // namespace thz
