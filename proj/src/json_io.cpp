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

#include "thzchan/json_io.hpp"

#include <fstream>
#include <ostream>

namespace thz {

namespace {

// Overwrite a field only when the key is present; presets stay authoritative
// for everything a config file does not mention.
template <typename T> void opt(const json &j, const char *key, T &field)
{
    if (j.contains(key))
        field = j.at(key).get<T>();
}

} // namespace

json to_json(const ScenarioParams &p)
{
    return json{{"kind", to_string(p.kind)},
                {"los", p.los},
                {"deterministic_enabled", p.deterministic_enabled},
                {"ple_best", p.ple_best},
                {"ple_omni", p.ple_omni},
                {"lambda_n", p.lambda_n},
                {"mu_log_ds", p.mu_log_ds},
                {"mu_log_asa", p.mu_log_asa},
                {"mu_dtau_ns", p.mu_dtau_ns},
                {"rl_mu_ln", p.rl_mu_ln},
                {"rl_sigma_ln", p.rl_sigma_ln},
                {"k_factor_db", p.k_factor_db},
                {"xi_db", p.xi_db},
                {"r_tau", p.r_tau},
                {"r_phi", p.r_phi},
                {"r_tau_c_ns", p.r_tau_c_ns},
                {"r_phi_c_deg", p.r_phi_c_deg},
                {"m_subpaths", p.m_subpaths},
                {"cluster_count_guard", p.cluster_count_guard},
                {"guard_rel_db", p.guard_rel_db},
                {"rl_per_bounce", p.rl_per_bounce}};
}

ScenarioParams scenario_params_from_json(const json &j)
{
    ScenarioParams p;
    if (j.contains("kind"))
        p = preset(scenario_from_string(j.at("kind").get<std::string>()));
    opt(j, "los", p.los);
    opt(j, "deterministic_enabled", p.deterministic_enabled);
    opt(j, "ple_best", p.ple_best);
    opt(j, "ple_omni", p.ple_omni);
    opt(j, "lambda_n", p.lambda_n);
    opt(j, "mu_log_ds", p.mu_log_ds);
    opt(j, "mu_log_asa", p.mu_log_asa);
    opt(j, "mu_dtau_ns", p.mu_dtau_ns);
    opt(j, "rl_mu_ln", p.rl_mu_ln);
    opt(j, "rl_sigma_ln", p.rl_sigma_ln);
    opt(j, "k_factor_db", p.k_factor_db);
    opt(j, "xi_db", p.xi_db);
    opt(j, "r_tau", p.r_tau);
    opt(j, "r_phi", p.r_phi);
    opt(j, "r_tau_c_ns", p.r_tau_c_ns);
    opt(j, "r_phi_c_deg", p.r_phi_c_deg);
    opt(j, "m_subpaths", p.m_subpaths);
    opt(j, "cluster_count_guard", p.cluster_count_guard);
    opt(j, "guard_rel_db", p.guard_rel_db);
    opt(j, "rl_per_bounce", p.rl_per_bounce);
    p.validate();
    return p;
}

json to_json(const SystemParams &s)
{
    return json{{"f_start_ghz", s.f_start_ghz},
                {"f_end_ghz", s.f_end_ghz},
                {"n_sweep", s.n_sweep},
                {"noise_floor_dbm", s.noise_floor_dbm},
                {"tx_hpbw_deg", s.tx_hpbw_deg},
                {"rx_hpbw_deg", s.rx_hpbw_deg},
                {"tx_gain_dbi", s.tx_gain_dbi},
                {"rx_gain_dbi", s.rx_gain_dbi},
                {"az_grid_deg", s.az_grid_deg},
                {"el_grid_deg", s.el_grid_deg},
                {"max_excess_delay_ns", s.max_excess_delay_ns},
                {"window_w", s.window_w},
                {"sidelobe_floor_db", s.sidelobe_floor_db},
                {"apply_tx_pattern", s.apply_tx_pattern},
                {"noise_enabled", s.noise_enabled}};
}

SystemParams system_params_from_json(const json &j)
{
    SystemParams s = preset_system(ScenarioKind::MeetingRoom);
    opt(j, "f_start_ghz", s.f_start_ghz);
    opt(j, "f_end_ghz", s.f_end_ghz);
    opt(j, "n_sweep", s.n_sweep);
    opt(j, "noise_floor_dbm", s.noise_floor_dbm);
    opt(j, "tx_hpbw_deg", s.tx_hpbw_deg);
    opt(j, "rx_hpbw_deg", s.rx_hpbw_deg);
    opt(j, "tx_gain_dbi", s.tx_gain_dbi);
    opt(j, "rx_gain_dbi", s.rx_gain_dbi);
    opt(j, "az_grid_deg", s.az_grid_deg);
    opt(j, "el_grid_deg", s.el_grid_deg);
    opt(j, "max_excess_delay_ns", s.max_excess_delay_ns);
    opt(j, "window_w", s.window_w);
    opt(j, "sidelobe_floor_db", s.sidelobe_floor_db);
    opt(j, "apply_tx_pattern", s.apply_tx_pattern);
    opt(j, "noise_enabled", s.noise_enabled);
    s.validate();
    return s;
}

json to_json(const RoomGeometry &g)
{
    json surfaces = json::array();
    for (Surface s : g.active_surfaces)
        surfaces.push_back(to_string(s));
    return json{{"length_m", g.length_m},
                {"width_m", g.width_m},
                {"height_m", g.height_m},
                {"tx", {g.tx.x, g.tx.y, g.tx.z}},
                {"rx", {g.rx.x, g.rx.y, g.rx.z}},
                {"active_surfaces", surfaces},
                {"max_reflection_order", g.max_reflection_order}};
}

RoomGeometry room_geometry_from_json(const json &j)
{
    RoomGeometry g;
    opt(j, "length_m", g.length_m);
    opt(j, "width_m", g.width_m);
    opt(j, "height_m", g.height_m);
    if (j.contains("tx"))
        g.tx = {j["tx"][0].get<double>(), j["tx"][1].get<double>(), j["tx"][2].get<double>()};
    if (j.contains("rx"))
        g.rx = {j["rx"][0].get<double>(), j["rx"][1].get<double>(), j["rx"][2].get<double>()};
    if (j.contains("active_surfaces"))
    {
        g.active_surfaces.clear();
        for (const auto &s : j["active_surfaces"])
            g.active_surfaces.push_back(surface_from_string(s.get<std::string>()));
    }
    opt(j, "max_reflection_order", g.max_reflection_order);
    g.validate();
    return g;
}

json to_json(const ChannelRealization &r)
{
    json clusters = json::array();
    for (const Cluster &c : r.clusters)
    {
        json subs = json::array();
        for (const Subpath &s : c.subpaths)
            subs.push_back({{"toa_ns", s.toa_ns},
                            {"aoa_az_deg", s.aoa_az_deg},
                            {"aoa_el_deg", s.aoa_el_deg},
                            {"amp", s.amplitude},
                            {"phase_rad", s.phase_rad},
                            {"power_frac_within_cluster", s.power_frac_within_cluster}});
        clusters.push_back({{"index", c.index},
                            {"toa_ns", c.toa_ns},
                            {"power_frac", c.power_frac},
                            {"aoa_az_deg", c.aoa_az_deg},
                            {"origin", to_string(c.origin)},
                            {"reflection_order", c.reflection_order},
                            {"rl_db", c.rl_db},
                            {"aod_off_boresight_deg", c.aod_off_boresight_deg},
                            {"subpaths", subs}});
    }
    return json{{"schema", "thzchan.realization/1"},
                {"scenario", to_string(r.scenario)},
                {"distance_m", r.distance_m},
                {"seed", r.seed},
                {"pl_omni_db", r.pl_omni_db},
                {"f_ref_ghz", r.f_ref_ghz},
                {"clusters", clusters}};
}

ChannelRealization realization_from_json(const json &j)
{
    if (j.value("schema", "") != "thzchan.realization/1")
        throw std::invalid_argument("realization_from_json: unknown schema");
    ChannelRealization r;
    r.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    r.distance_m = j.at("distance_m").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.pl_omni_db = j.at("pl_omni_db").get<double>();
    r.f_ref_ghz = j.at("f_ref_ghz").get<double>();
    for (const auto &jc : j.at("clusters"))
    {
        Cluster c;
        c.index = jc.at("index").get<int>();
        c.toa_ns = jc.at("toa_ns").get<double>();
        c.power_frac = jc.at("power_frac").get<double>();
        c.aoa_az_deg = jc.at("aoa_az_deg").get<double>();
        c.origin = origin_from_string(jc.at("origin").get<std::string>());
        c.reflection_order = jc.at("reflection_order").get<int>();
        c.rl_db = jc.at("rl_db").get<double>();
        c.aod_off_boresight_deg = jc.at("aod_off_boresight_deg").get<double>();
        for (const auto &js : jc.at("subpaths"))
        {
            Subpath s;
            s.toa_ns = js.at("toa_ns").get<double>();
            s.aoa_az_deg = js.at("aoa_az_deg").get<double>();
            s.aoa_el_deg = js.at("aoa_el_deg").get<double>();
            s.amplitude = js.at("amp").get<double>();
            s.phase_rad = js.at("phase_rad").get<double>();
            s.power_frac_within_cluster = js.at("power_frac_within_cluster").get<double>();
            c.subpaths.push_back(s);
        }
        r.clusters.push_back(std::move(c));
    }
    return r;
}

json to_json(const DropStats &s)
{
    json cnl = json::array();
    for (const CnlPoint &p : s.cnl.points)
        cnl.push_back({{"excess_ns", p.excess_delay_ns}, {"cnl_db", p.cnl_db}, {"category", p.category}});
    return json{{"ds_ns", s.ds_ns},
                {"asa_deg", s.asa_deg},
                {"n_clusters", s.n_clusters},
                {"total_power_mw", s.total_power_mw},
                {"gaps_ns", s.gaps_ns},
                {"cnl_points", cnl},
                {"usable", s.usable}};
}

void write_realization_csv(std::ostream &os, const ChannelRealization &r)
{
    os << "cluster,subpath,origin,toa_ns,aoa_az_deg,aoa_el_deg,amp,phase_rad,power_frac_within_cluster\n";
    os.precision(12);
    for (const Cluster &c : r.clusters)
        for (std::size_t i = 0; i < c.subpaths.size(); ++i)
        {
            const Subpath &s = c.subpaths[i];
            os << c.index << ',' << i << ',' << to_string(c.origin) << ',' << s.toa_ns << ','
               << s.aoa_az_deg << ',' << s.aoa_el_deg << ',' << s.amplitude << ',' << s.phase_rad
               << ',' << s.power_frac_within_cluster << '\n';
        }
}

Config load_config(ScenarioKind kind, const std::string &path_or_empty)
{
    Config cfg;
    cfg.scenario = preset(kind);
    cfg.system = preset_system(kind);
    cfg.geometry = preset_geometry(kind);
    if (path_or_empty.empty())
        return cfg;

    json j = read_json_file(path_or_empty);
    if (j.contains("scenario"))
    {
        json sj = j["scenario"];
        if (!sj.contains("kind"))
            sj["kind"] = to_string(kind);
        cfg.scenario = scenario_params_from_json(sj);
    }
    if (j.contains("system"))
    {
        json merged = to_json(cfg.system);
        merged.update(j["system"]);
        cfg.system = system_params_from_json(merged);
    }
    if (j.contains("geometry"))
    {
        json merged = to_json(cfg.geometry);
        merged.update(j["geometry"]);
        cfg.geometry = room_geometry_from_json(merged);
        cfg.has_geometry_override = true;
    }
    return cfg;
}

std::uint64_t config_hash(const json &j)
{
    const std::string dump = j.dump(); // nlohmann objects are key-sorted
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json read_json_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    json j;
    is >> j;
    return j;
}

void write_json_file(const std::string &path, const json &j)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

} // namespace thz
