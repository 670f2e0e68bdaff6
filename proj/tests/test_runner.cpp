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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thzchan/runner.hpp"

using namespace thz;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("identical config and seed produce byte-identical outputs")
{
    RunConfig cfg;
    cfg.kind = ScenarioKind::CubicleArea;
    cfg.n_drops = 25;
    cfg.seed = 77;
    cfg.calibrate_first = false;
    cfg.dump_realizations = true;

    fs::path a = fs::temp_directory_path() / "thzchan_mc_a";
    fs::path b = fs::temp_directory_path() / "thzchan_mc_b";
    fs::remove_all(a);
    fs::remove_all(b);

    cfg.out_dir = a.string();
    run_montecarlo(cfg);
    cfg.out_dir = b.string();
    run_montecarlo(cfg);

    for (const char *name : {"manifest.json", "drops.ndjson", "summary.json", "realizations.ndjson"})
    {
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK(!slurp(a / name).empty());
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("a one-drop batch reports that drop's statistics")
{
    RunConfig cfg;
    cfg.kind = ScenarioKind::CubicleArea;
    cfg.n_drops = 1;
    cfg.seed = 5;
    cfg.calibrate_first = false;

    MonteCarloSummary sum = run_montecarlo(cfg);
    CHECK(sum.n_drops == 1);
    REQUIRE(sum.n_usable == 1);
    CHECK(sum.std_log_ds == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sum.std_log_asa == doctest::Approx(0.0).epsilon(1e-12));

    // reproduce the drop by hand
    ScenarioParams p = preset(ScenarioKind::CubicleArea);
    Rng geom_rng(Rng::derive(5, 0));
    RoomGeometry g = sample_drop_geometry(ScenarioKind::CubicleArea, geom_rng);
    ChannelRealization real = generate(p, g, Rng::derive(5, 1));
    DropStats stats = analyze_realization(real, cfg.offset_step_deg);
    CHECK(sum.mean_log_ds == doctest::Approx(std::log(stats.ds_ns)).epsilon(1e-12));
    CHECK(sum.mean_log_asa == doctest::Approx(std::log(stats.asa_deg)).epsilon(1e-12));
}

TEST_CASE("drop-level parallelism does not change the aggregate")
{
    RunConfig cfg;
    cfg.kind = ScenarioKind::MeetingRoom;
    cfg.n_drops = 24;
    cfg.seed = 9;
    cfg.calibrate_first = false;

    MonteCarloSummary serial = run_montecarlo(cfg);
    cfg.jobs = 4;
    MonteCarloSummary parallel = run_montecarlo(cfg);
    CHECK(serial.mean_log_ds == doctest::Approx(parallel.mean_log_ds).epsilon(1e-15));
    CHECK(serial.mean_log_asa == doctest::Approx(parallel.mean_log_asa).epsilon(1e-15));
    CHECK(serial.mean_n_clusters == doctest::Approx(parallel.mean_n_clusters).epsilon(1e-15));
}

TEST_CASE("free-space sounding loop recovers the Friis exponent")
{
    TablesConfig tc;
    tc.kinds = {ScenarioKind::Hallway};
    tc.n_distances = 8;
    tc.seed = 4;
    tc.free_space_reference = true;
    auto rows = run_tables(tc);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ple_best == doctest::Approx(2.0).epsilon(0.01)); // 2.00 +/- 0.02
    CHECK(rows[0].ple_omni <= rows[0].ple_best + 0.05);
}

TEST_CASE("realization JSON round trip")
{
    ScenarioParams p = preset(ScenarioKind::MeetingRoom);
    RoomGeometry g = preset_geometry(ScenarioKind::MeetingRoom);
    ChannelRealization real = generate(p, g, 1234);
    ChannelRealization back = realization_from_json(to_json(real));
    CHECK(to_json(back).dump() == to_json(real).dump());
}

TEST_CASE("config hash is stable and sensitive")
{
    json a{{"x", 1}, {"y", 2}};
    json b{{"y", 2}, {"x", 1}}; // same content, different insertion order
    CHECK(config_hash(a) == config_hash(b));
    json c{{"x", 1}, {"y", 3}};
    CHECK(config_hash(a) != config_hash(c));
}
