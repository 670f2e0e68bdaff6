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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "thzchan/analysis.hpp"
#include "thzchan/json_io.hpp"
#include "thzchan/runner.hpp"
#include "thzchan/sounding.hpp"

namespace fs = std::filesystem;
using namespace thz;

namespace {

std::string default_config_path()
{
    const char *env = std::getenv("THZCHAN_CONFIG");
    return env != nullptr ? env : "";
}

ChannelRealization generate_from_options(const std::string &scenario, const std::string &config,
                                         double distance, std::uint64_t seed, bool no_det,
                                         bool no_stat)
{
    ScenarioKind kind = scenario_from_string(scenario);
    Config cfg = load_config(kind, config);
    RoomGeometry geom = cfg.geometry;
    if (distance > 0.0 && !cfg.has_geometry_override)
        geom = geometry_at_distance(kind, distance);
    GenerateOptions opts;
    opts.deterministic_part = !no_det;
    opts.statistical_part = !no_stat;
    return generate(cfg.scenario, geom, seed, opts);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"thzchan - hybrid ray-tracing/statistical indoor channel simulator, 201-209 GHz"};
    app.require_subcommand(1);

    std::string scenario = "meeting_room";
    std::string config = default_config_path();
    std::string out = "out";
    std::string input;
    std::uint64_t seed = 1;
    double distance = 0.0;
    int drops = 1000;
    int jobs = 1;
    bool no_det = false, no_stat = false, no_cal = false, check = false;
    int n_mc = 600;
    int n_distances = 10;
    bool free_space = false;

    auto add_common = [&](CLI::App *cmd, bool with_drops) {
        cmd->add_option("--scenario", scenario, "meeting_room|cubicle_area|hallway|nlos");
        cmd->add_option("--config", config, "JSON config overriding preset fields");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--out", out, "output directory");
        if (with_drops)
            cmd->add_option("--drops", drops, "number of Monte-Carlo drops");
    };

    auto *c_gen = app.add_subcommand("generate", "generate one channel realization");
    add_common(c_gen, false);
    c_gen->add_option("--distance", distance, "Tx-Rx distance in meters");
    c_gen->add_flag("--no-deterministic", no_det, "disable traced clusters");
    c_gen->add_flag("--no-statistical", no_stat, "disable statistical clusters");

    auto *c_sound = app.add_subcommand("sound", "synthesize a rotation-scan sweep");
    add_common(c_sound, false);
    c_sound->add_option("--distance", distance, "Tx-Rx distance in meters");
    c_sound->add_option("--in", input, "realization JSON (generated fresh when omitted)");
    c_sound->add_flag("--no-deterministic", no_det, "disable traced clusters");
    c_sound->add_flag("--no-statistical", no_stat, "disable statistical clusters");

    auto *c_analyze = app.add_subcommand("analyze", "PDAP, clustering and spread statistics");
    add_common(c_analyze, false);
    c_analyze->add_option("--in", input, "sweep CSV or realization JSON")->required();

    auto *c_fit = app.add_subcommand("fit-pl", "fit CI path loss on synthetic sweeps");
    add_common(c_fit, false);
    c_fit->add_option("--n-distances", n_distances, "points across the distance span");
    c_fit->add_flag("--free-space", free_space, "single LoS path reference channels");

    auto *c_cal = app.add_subcommand("calibrate", "tune free parameters to the spread targets");
    add_common(c_cal, false);
    c_cal->add_option("--n-mc", n_mc, "drops per objective evaluation");

    auto *c_mc = app.add_subcommand("montecarlo", "batch generation + analysis");
    add_common(c_mc, true);
    c_mc->add_option("--jobs", jobs, "worker threads");
    c_mc->add_flag("--check", check, "exit nonzero when validation tolerances fail");
    c_mc->add_flag("--no-calibrate", no_cal, "skip calibration, use preset free parameters");
    c_mc->add_option("--n-mc", n_mc, "calibration drops per objective evaluation");

    auto *c_tables = app.add_subcommand("tables", "PLE table + parameter summary from sweeps");
    add_common(c_tables, false);
    c_tables->add_option("--n-distances", n_distances, "points across the distance span");

    auto *c_check = app.add_subcommand("check", "calibrated validation across all scenarios");
    add_common(c_check, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (app.got_subcommand(c_gen))
        {
            ChannelRealization real =
                generate_from_options(scenario, config, distance, seed, no_det, no_stat);
            fs::create_directories(out);
            write_json_file((fs::path(out) / "realization.json").string(), to_json(real));
            std::ofstream csv(fs::path(out) / "realization.csv");
            write_realization_csv(csv, real);
            std::cout << "wrote " << out << "/realization.json (" << real.clusters.size()
                      << " clusters, d=" << real.distance_m << " m)\n";
        }
        else if (app.got_subcommand(c_sound))
        {
            ChannelRealization real =
                input.empty()
                    ? generate_from_options(scenario, config, distance, seed, no_det, no_stat)
                    : realization_from_json(read_json_file(input));
            Config cfg = load_config(real.scenario, config);
            SoundingSweep sweep = full_scan(real, cfg.system, Rng::derive(seed, 0xACED));
            fs::create_directories(out);
            std::ofstream os(fs::path(out) / "sweep.csv");
            write_sweep_csv(os, sweep);
            std::cout << "wrote " << out << "/sweep.csv (" << sweep.n_dirs() << " directions)\n";
        }
        else if (app.got_subcommand(c_analyze))
        {
            fs::create_directories(out);
            if (input.ends_with(".json"))
            {
                ChannelRealization real = realization_from_json(read_json_file(input));
                DropStats stats = analyze_realization(real);
                write_json_file((fs::path(out) / "stats.json").string(), to_json(stats));
                std::cout << "ds_ns=" << stats.ds_ns << " asa_deg=" << stats.asa_deg
                          << " n_clusters=" << stats.n_clusters << '\n';
            }
            else
            {
                std::ifstream is(input);
                if (!is)
                    throw std::runtime_error("cannot open " + input);
                SoundingSweep sweep = read_sweep_csv(is);
                Pdap pdap = pdap_from_sweep(sweep);
                std::ofstream pc(fs::path(out) / "pdap.csv");
                write_pdap_csv(pc, pdap);
                MpcSet set = pdap.to_mpcs();
                json stats{{"n_mpcs", set.mpcs.size()}, {"threshold_db", pdap.threshold_db}};
                if (!set.mpcs.empty())
                {
                    int n = dbscan_mcd(set);
                    auto clusters = summarize_clusters(set, beam_overlap_factor(sweep.system));
                    stats["n_clusters"] = n;
                    stats["ds_ns"] = rms_delay_spread_ns(set);
                    stats["asa_deg"] = rms_asa_deg(set, 1.0);
                    json jc = json::array();
                    for (const auto &c : clusters)
                        jc.push_back({{"toa_ns", c.toa_ns},
                                      {"power_dbm", lin_to_db(c.power_mw)},
                                      {"aoa_az_deg", c.aoa_az_deg},
                                      {"n_mpcs", c.n_mpcs}});
                    stats["clusters"] = jc;
                }
                write_json_file((fs::path(out) / "stats.json").string(), stats);
                std::cout << "wrote " << out << "/pdap.csv and stats.json\n";
            }
        }
        else if (app.got_subcommand(c_fit))
        {
            TablesConfig tc;
            tc.kinds = {scenario_from_string(scenario)};
            tc.n_distances = n_distances;
            tc.seed = seed;
            tc.free_space_reference = free_space;
            tc.out_dir = out;
            auto rows = run_tables(tc);
            for (const PleRow &r : rows)
                std::cout << to_string(r.kind) << ": ple_best=" << r.ple_best
                          << " ple_omni=" << r.ple_omni << '\n';
        }
        else if (app.got_subcommand(c_cal))
        {
            ScenarioKind kind = scenario_from_string(scenario);
            Config cfg = load_config(kind, config);
            auto [t_ds, t_asa] = validation_targets(kind);
            CalibrationResult res = calibrate(cfg.scenario, t_ds, t_asa, n_mc);
            fs::create_directories(out);
            write_json_file((fs::path(out) / "calibrated_params.json").string(),
                            json{{"scenario", to_json(res.params)},
                                 {"achieved_mu_log_ds", res.achieved_mu_log_ds},
                                 {"achieved_mu_log_asa", res.achieved_mu_log_asa},
                                 {"converged", res.converged},
                                 {"n_evals", res.n_evals}});
            std::cout << (res.converged ? "converged" : "NOT converged")
                      << ": mu_log_ds=" << res.achieved_mu_log_ds << " (target " << t_ds
                      << "), mu_log_asa=" << res.achieved_mu_log_asa << " (target " << t_asa
                      << ")\n";
            if (!res.converged)
                return 2;
        }
        else if (app.got_subcommand(c_mc))
        {
            RunConfig rc;
            rc.kind = scenario_from_string(scenario);
            rc.config_path = config;
            rc.n_drops = drops;
            rc.seed = seed;
            rc.jobs = jobs;
            rc.calibrate_first = !no_cal;
            rc.n_mc_calibration = n_mc;
            rc.check = check;
            rc.out_dir = out;
            MonteCarloSummary sum = run_montecarlo(rc);
            std::cout << to_string(sum.kind) << ": mean_log_ds=" << sum.mean_log_ds
                      << " mean_log_asa=" << sum.mean_log_asa
                      << " mean_n_clusters=" << sum.mean_n_clusters
                      << " mean_gap_ns=" << sum.mean_gap_ns << " (usable " << sum.n_usable << "/"
                      << sum.n_drops << ")\n";
            if (check && !sum.check_passed)
                return 2;
        }
        else if (app.got_subcommand(c_tables))
        {
            TablesConfig tc;
            tc.n_distances = n_distances;
            tc.seed = seed;
            tc.out_dir = out;
            auto rows = run_tables(tc);
            for (const PleRow &r : rows)
                std::cout << to_string(r.kind) << ": ple_best=" << r.ple_best
                          << " ple_omni=" << r.ple_omni << '\n';
        }
        else if (app.got_subcommand(c_check))
        {
            if (!run_check(std::cout, drops, seed, 0.07))
                return 2;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
