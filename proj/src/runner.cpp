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

#include "thzchan/runner.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "thzchan/analysis.hpp"
#include "thzchan/sounding.hpp"

namespace thz {

namespace {

struct DropRecord
{
    int index = 0;
    double distance_m = 0.0;
    std::uint64_t seed = 0;
    DropStats stats;
    json realization; // only kept when dumping is requested
};

DropRecord run_drop(const ScenarioParams &params, ScenarioKind kind, std::uint64_t master_seed,
                    int index, const GenerateOptions &opts, double offset_step_deg, bool dump)
{
    DropRecord rec;
    rec.index = index;
    Rng geom_rng(Rng::derive(master_seed, 2 * static_cast<std::uint64_t>(index)));
    RoomGeometry geom = sample_drop_geometry(kind, geom_rng);
    rec.seed = Rng::derive(master_seed, 2 * static_cast<std::uint64_t>(index) + 1);
    ChannelRealization real = generate(params, geom, rec.seed, opts);
    rec.distance_m = real.distance_m;
    rec.stats = analyze_realization(real, offset_step_deg);
    if (dump)
        rec.realization = to_json(real);
    return rec;
}

} // namespace

MonteCarloSummary run_montecarlo(const RunConfig &cfg)
{
    if (cfg.n_drops < 1)
        throw std::invalid_argument("run_montecarlo: n_drops must be >= 1");

    Config conf = load_config(cfg.kind, cfg.config_path);
    ScenarioParams params = conf.scenario;

    MonteCarloSummary sum;
    sum.kind = cfg.kind;
    std::tie(sum.target_mu_log_ds, sum.target_mu_log_asa) = validation_targets(cfg.kind);

    if (cfg.calibrate_first)
    {
        CalibrationResult cal =
            calibrate(params, sum.target_mu_log_ds, sum.target_mu_log_asa, cfg.n_mc_calibration);
        params = cal.params;
        sum.calibrated = true;
    }
    sum.params = params;

    GenerateOptions opts;
    opts.deterministic_part = cfg.deterministic_part;
    opts.statistical_part = cfg.statistical_part;

    std::vector<DropRecord> records(cfg.n_drops);
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1)
    {
        for (int i = 0; i < cfg.n_drops; ++i)
            records[i] = run_drop(params, cfg.kind, cfg.seed, i, opts, cfg.offset_step_deg,
                                  cfg.dump_realizations);
    }
    else
    {
        // Drop-level parallelism; records land in their slot so the
        // aggregation below stays order-independent.
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < cfg.n_drops; i = next.fetch_add(1))
                    records[i] = run_drop(params, cfg.kind, cfg.seed, i, opts, cfg.offset_step_deg,
                                          cfg.dump_realizations);
            });
        for (auto &th : pool)
            th.join();
    }

    // Aggregate in drop order (commutative sums, fixed iteration order).
    double s_ds = 0.0, s_ds2 = 0.0, s_asa = 0.0, s_asa2 = 0.0;
    double s_nc = 0.0, s_gap = 0.0;
    int n_gap = 0;
    for (const DropRecord &rec : records)
    {
        s_nc += rec.stats.n_clusters;
        for (double g : rec.stats.gaps_ns)
        {
            s_gap += g;
            ++n_gap;
        }
        if (!rec.stats.usable)
            continue;
        double lds = std::log(rec.stats.ds_ns);
        double lasa = std::log(rec.stats.asa_deg);
        s_ds += lds;
        s_ds2 += lds * lds;
        s_asa += lasa;
        s_asa2 += lasa * lasa;
        ++sum.n_usable;
    }
    sum.n_drops = cfg.n_drops;
    if (sum.n_usable > 0)
    {
        sum.mean_log_ds = s_ds / sum.n_usable;
        sum.mean_log_asa = s_asa / sum.n_usable;
        sum.std_log_ds = std::sqrt(std::max(0.0, s_ds2 / sum.n_usable - sum.mean_log_ds * sum.mean_log_ds));
        sum.std_log_asa =
            std::sqrt(std::max(0.0, s_asa2 / sum.n_usable - sum.mean_log_asa * sum.mean_log_asa));
    }
    sum.mean_n_clusters = s_nc / cfg.n_drops;
    sum.mean_gap_ns = n_gap > 0 ? s_gap / n_gap : 0.0;

    if (cfg.check)
        sum.check_passed = std::abs(sum.mean_log_ds - sum.target_mu_log_ds) <= cfg.check_tol &&
                           std::abs(sum.mean_log_asa - sum.target_mu_log_asa) <= cfg.check_tol;

    if (!cfg.out_dir.empty())
    {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);

        json cfg_json{{"scenario", to_string(cfg.kind)},
                      {"n_drops", cfg.n_drops},
                      {"seed", cfg.seed},
                      {"calibrate_first", cfg.calibrate_first},
                      {"n_mc_calibration", cfg.n_mc_calibration},
                      {"deterministic_part", cfg.deterministic_part},
                      {"statistical_part", cfg.statistical_part},
                      {"offset_step_deg", cfg.offset_step_deg},
                      {"params", to_json(sum.params)},
                      {"system", to_json(conf.system)},
                      {"geometry", to_json(conf.geometry)}};
        json manifest{{"tool", "thzchan"},
                      {"version", kToolVersion},
                      {"seed", cfg.seed},
                      {"config_hash", config_hash(cfg_json)},
                      {"config", cfg_json}};
        write_json_file((fs::path(cfg.out_dir) / "manifest.json").string(), manifest);

        std::ofstream nd(fs::path(cfg.out_dir) / "drops.ndjson");
        for (const DropRecord &rec : records)
        {
            json line{{"drop", rec.index},
                      {"seed", rec.seed},
                      {"distance_m", rec.distance_m},
                      {"stats", to_json(rec.stats)}};
            nd << line.dump() << '\n';
        }

        if (cfg.dump_realizations)
        {
            std::ofstream rd(fs::path(cfg.out_dir) / "realizations.ndjson");
            for (const DropRecord &rec : records)
                rd << rec.realization.dump() << '\n';
        }

        json sj{{"scenario", to_string(sum.kind)},
                {"n_drops", sum.n_drops},
                {"n_usable", sum.n_usable},
                {"mean_log_ds", sum.mean_log_ds},
                {"std_log_ds", sum.std_log_ds},
                {"mean_log_asa", sum.mean_log_asa},
                {"std_log_asa", sum.std_log_asa},
                {"mean_n_clusters", sum.mean_n_clusters},
                {"mean_gap_ns", sum.mean_gap_ns},
                {"target_mu_log_ds", sum.target_mu_log_ds},
                {"target_mu_log_asa", sum.target_mu_log_asa},
                {"calibrated", sum.calibrated},
                {"params", to_json(sum.params)}};
        write_json_file((fs::path(cfg.out_dir) / "summary.json").string(), sj);
    }
    return sum;
}

std::vector<PleRow> run_tables(const TablesConfig &cfg)
{
    if (cfg.n_distances < 2)
        throw std::invalid_argument("run_tables: need at least two distances");

    std::vector<PleRow> rows;
    std::vector<std::string> param_lines;

    for (ScenarioKind kind : cfg.kinds)
    {
        ScenarioParams params = preset(kind);
        SystemParams system = preset_system(kind);
        // a single elevation ring keeps the scan cost reasonable; the
        // generated rays are in-plane anyway
        system.el_grid_deg = {0.0};

        auto [d_lo, d_hi] = [&] {
            switch (kind)
            {
            case ScenarioKind::MeetingRoom: return std::pair{2.0, 9.0};
            case ScenarioKind::CubicleArea: return std::pair{3.5, 14.0};
            case ScenarioKind::Hallway: return std::pair{2.0, 28.0};
            case ScenarioKind::NLoS: return std::pair{3.75, 20.0};
            }
            throw std::invalid_argument("unknown scenario kind");
        }();

        std::vector<std::pair<double, double>> best, omni;
        for (int i = 0; i < cfg.n_distances; ++i)
        {
            double d = d_lo + (d_hi - d_lo) * i / (cfg.n_distances - 1);
            RoomGeometry geom = geometry_at_distance(kind, d);
            GenerateOptions opts;
            if (cfg.free_space_reference)
            {
                opts.deterministic_part = true;
                opts.statistical_part = false;
                ScenarioParams fs_params = params;
                fs_params.deterministic_enabled = true;
                geom.active_surfaces.clear(); // LoS only
                geom.max_reflection_order = 0;
                ChannelRealization real =
                    generate(fs_params, geom, Rng::derive(cfg.seed, i), opts);
                SoundingSweep sweep = full_scan(real, system, Rng::derive(cfg.seed, 1000 + i));
                best.emplace_back(real.distance_m, pl_best_los_db(sweep));
                omni.emplace_back(real.distance_m, pl_omni_db(sweep, system.window_w));
                continue;
            }
            ChannelRealization real = generate(params, geom, Rng::derive(cfg.seed, i), opts);
            SoundingSweep sweep = full_scan(real, system, Rng::derive(cfg.seed, 1000 + i));
            double pl_best = params.los ? pl_best_los_db(sweep) : pl_best_nlos_db(sweep, system.window_w);
            best.emplace_back(real.distance_m, pl_best);
            omni.emplace_back(real.distance_m, pl_omni_db(sweep, system.window_w));
        }

        const double f = system.center_freq_ghz();
        CiModel mb = ci_fit(best, f);
        CiModel mo = ci_fit(omni, f);
        rows.push_back({kind, mb.ple, mo.ple, mb.sigma_sf_db, mo.sigma_sf_db});

        if (!cfg.out_dir.empty())
        {
            namespace fs = std::filesystem;
            fs::create_directories(cfg.out_dir);
            std::ofstream pl(fs::path(cfg.out_dir) / ("pl_" + to_string(kind) + ".csv"));
            pl << "d_m,pl_best_db,pl_omni_db\n";
            pl.precision(12);
            for (std::size_t i = 0; i < best.size(); ++i)
                pl << best[i].first << ',' << best[i].second << ',' << omni[i].second << '\n';
        }
    }

    if (!cfg.out_dir.empty())
    {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        std::ofstream tab(fs::path(cfg.out_dir) / "ple_table.csv");
        tab << "scenario,ple_best,ple_omni,sigma_best_db,sigma_omni_db\n";
        tab.precision(6);
        for (const PleRow &r : rows)
            tab << to_string(r.kind) << ',' << r.ple_best << ',' << r.ple_omni << ','
                << r.sigma_best_db << ',' << r.sigma_omni_db << '\n';

        std::ofstream par(fs::path(cfg.out_dir) / "channel_parameters.csv");
        par << "scenario,ple_best,ple_omni,lambda_n,mu_log_ds,mu_log_asa,mu_dtau_ns,rl_mu_ln,rl_"
               "sigma_ln\n";
        par.precision(6);
        for (ScenarioKind kind : cfg.kinds)
        {
            ScenarioParams p = preset(kind);
            par << to_string(kind) << ',' << p.ple_best << ',' << p.ple_omni << ',' << p.lambda_n
                << ',' << p.mu_log_ds << ',' << p.mu_log_asa << ',' << p.mu_dtau_ns << ','
                << p.rl_mu_ln << ',' << p.rl_sigma_ln << '\n';
        }
    }
    return rows;
}

bool run_check(std::ostream &os, int n_drops, std::uint64_t seed, double tol)
{
    bool all_ok = true;
    for (ScenarioKind kind : all_scenarios())
    {
        RunConfig cfg;
        cfg.kind = kind;
        cfg.n_drops = n_drops;
        cfg.seed = seed;
        cfg.check = true;
        cfg.check_tol = tol;
        MonteCarloSummary sum = run_montecarlo(cfg);
        os << to_string(kind) << ": mean_log_ds=" << sum.mean_log_ds
           << " (target " << sum.target_mu_log_ds << "), mean_log_asa=" << sum.mean_log_asa
           << " (target " << sum.target_mu_log_asa << ") -> "
           << (sum.check_passed ? "PASS" : "FAIL") << '\n';
        all_ok = all_ok && sum.check_passed;
    }
    return all_ok;
}

} // namespace thz
