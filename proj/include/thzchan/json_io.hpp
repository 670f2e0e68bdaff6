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

#ifndef THZCHAN_JSON_IO_HPP
#define THZCHAN_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "thzchan/analysis.hpp"
#include "thzchan/raytracer.hpp"
#include "thzchan/scenario.hpp"
#include "thzchan/stochastic.hpp"

namespace thz {

using json = nlohmann::json;

json to_json(const ScenarioParams &p);
ScenarioParams scenario_params_from_json(const json &j);

json to_json(const SystemParams &s);
SystemParams system_params_from_json(const json &j);

json to_json(const RoomGeometry &g);
RoomGeometry room_geometry_from_json(const json &j);

json to_json(const ChannelRealization &r);
ChannelRealization realization_from_json(const json &j);

json to_json(const DropStats &s);

// Flat CSV of a realization, one row per subpath.
void write_realization_csv(std::ostream &os, const ChannelRealization &r);

// Config file: a JSON object with optional "scenario", "system" and
// "geometry" sections whose keys override the preset field values.
struct Config
{
    ScenarioParams scenario;
    SystemParams system;
    RoomGeometry geometry;
    bool has_geometry_override = false;
};

Config load_config(ScenarioKind kind, const std::string &path_or_empty);

// Stable 64-bit FNV-1a over the canonical (sorted-key) JSON dump; used for
// run manifests.
std::uint64_t config_hash(const json &j);

json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const json &j);

} // namespace thz

#endif
