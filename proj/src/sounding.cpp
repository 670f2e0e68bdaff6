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

#include "thzchan/sounding.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thz {

double pattern_gain_amp(double off_boresight_deg, double hpbw_deg, double gain_dbi,
                        double sidelobe_floor_db)
{
    if (hpbw_deg <= 0.0)
        throw std::invalid_argument("pattern_gain_amp: hpbw must be positive");
    double x = off_boresight_deg / hpbw_deg;
    double shape = std::exp(-4.0 * std::log(2.0) * x * x);
    double power = db_to_lin(gain_dbi) * std::max(shape, db_to_lin(sidelobe_floor_db));
    return std::sqrt(power);
}

std::vector<std::complex<double>> synthesize_ctf(const ChannelRealization &real,
                                                 const SystemParams &system, double rx_az_deg,
                                                 double rx_el_deg, Rng *noise_rng)
{
    system.validate();
    const int n = system.n_sweep;
    const double df = system.sweep_interval_ghz();
    const Vec3 beam = azel_to_unit(rx_az_deg, rx_el_deg);

    std::vector<std::complex<double>> ctf(n, {0.0, 0.0});

    for (const Cluster &c : real.clusters)
    {
        double a_t = 1.0;
        if (system.apply_tx_pattern)
        {
            // Departure offsets are only known for traced clusters; the
            // statistical clusters sit at boresight and pass at peak gain.
            a_t = pattern_gain_amp(c.aod_off_boresight_deg, system.tx_hpbw_deg, system.tx_gain_dbi,
                                   system.sidelobe_floor_db);
        }
        for (const Subpath &s : c.subpaths)
        {
            double off = angle_between_deg(azel_to_unit(s.aoa_az_deg, s.aoa_el_deg), beam);
            double a_r = pattern_gain_amp(off, system.rx_hpbw_deg, system.rx_gain_dbi,
                                          system.sidelobe_floor_db);
            double amp = s.amplitude * a_r * a_t;
            if (amp == 0.0)
                continue;

            // Phase recurrence across the sweep: one complex multiply per
            // sample instead of an exp() per sample.
            double phase0 = s.phase_rad - 2.0 * kPi * system.f_start_ghz * s.toa_ns;
            std::complex<double> acc = std::polar(amp, phase0);
            const std::complex<double> step = std::polar(1.0, -2.0 * kPi * df * s.toa_ns);
            for (int k = 0; k < n; ++k)
            {
                ctf[k] += acc;
                acc *= step;
            }
        }
    }

    if (noise_rng != nullptr && system.noise_enabled)
    {
        // Per-sample variance n * P_floor so that after the 1/N inverse DFT
        // each delay tap averages the configured floor.
        const double sigma =
            std::sqrt(static_cast<double>(n) * db_to_lin(system.noise_floor_dbm) / 2.0);
        for (int k = 0; k < n; ++k)
            ctf[k] += std::complex<double>(sigma * noise_rng->normal(), sigma * noise_rng->normal());
    }
    return ctf;
}

SoundingSweep full_scan(const ChannelRealization &real, const SystemParams &system,
                        std::uint64_t seed)
{
    system.validate();
    SoundingSweep sweep;
    sweep.system = system;
    sweep.truth = RealizationRef{real.scenario, real.distance_m, real.seed};
    sweep.ctf.reserve(system.n_dirs());

    std::size_t dir = 0;
    for (double el : system.el_grid_deg)
        for (double az : system.az_grid_deg)
        {
            Rng noise(Rng::derive(seed, dir));
            sweep.ctf.push_back(synthesize_ctf(real, system, az, el, &noise));
            ++dir;
        }
    return sweep;
}

std::vector<std::complex<double>> calibrate_ctf(std::span<const std::complex<double>> s_measured,
                                                std::span<const std::complex<double>> s_calibration,
                                                std::span<const std::complex<double>> h_attenuator)
{
    if (s_measured.size() != s_calibration.size() || s_measured.size() != h_attenuator.size())
        throw std::invalid_argument("calibrate_ctf: input lengths differ");
    std::vector<std::complex<double>> h(s_measured.size());
    for (std::size_t k = 0; k < h.size(); ++k)
    {
        if (std::abs(s_calibration[k]) == 0.0)
            throw std::invalid_argument("calibrate_ctf: calibration response has a zero sample");
        h[k] = s_measured[k] * h_attenuator[k] / s_calibration[k];
    }
    return h;
}

double beam_overlap_factor(const SystemParams &system)
{
    auto ring_power = [&](const std::vector<double> &grid, double target) {
        double acc = 0.0;
        for (double g : grid)
        {
            double off = std::abs(g - target);
            off = std::min(off, 360.0 - off);
            double x = off / system.rx_hpbw_deg;
            acc += std::max(std::exp(-4.0 * std::log(2.0) * x * x),
                            db_to_lin(system.sidelobe_floor_db));
        }
        return acc;
    };

    // Azimuth: average the ring sum over a fine sweep of path offsets
    // within one grid step. Elevation: the path sits at 0 degrees.
    double az_step = system.az_grid_deg.size() > 1
                         ? system.az_grid_deg[1] - system.az_grid_deg[0]
                         : 360.0;
    const int n_probe = 100;
    double az_acc = 0.0;
    for (int i = 0; i < n_probe; ++i)
        az_acc += ring_power(system.az_grid_deg, az_step * i / n_probe);
    return (az_acc / n_probe) * ring_power(system.el_grid_deg, 0.0);
}

void write_sweep_csv(std::ostream &os, const SoundingSweep &sweep)
{
    sweep.validate();
    const SystemParams &s = sweep.system;
    os.precision(17);
    os << "# thzchan.sweep/1\n";
    os << "# f_start_ghz," << s.f_start_ghz << "\n# f_end_ghz," << s.f_end_ghz << "\n# n_sweep,"
       << s.n_sweep << "\n# noise_floor_dbm," << s.noise_floor_dbm << "\n# tx_hpbw_deg,"
       << s.tx_hpbw_deg << "\n# rx_hpbw_deg," << s.rx_hpbw_deg << "\n# tx_gain_dbi,"
       << s.tx_gain_dbi << "\n# rx_gain_dbi," << s.rx_gain_dbi << "\n# window_w," << s.window_w
       << "\n# sidelobe_floor_db," << s.sidelobe_floor_db << "\n# apply_tx_pattern,"
       << (s.apply_tx_pattern ? 1 : 0) << "\n";
    os << "# az_grid_deg";
    for (double a : s.az_grid_deg)
        os << ',' << a;
    os << "\n# el_grid_deg";
    for (double e : s.el_grid_deg)
        os << ',' << e;
    os << "\naz_deg,el_deg,s,re,im\n";
    for (std::size_t dir = 0; dir < sweep.n_dirs(); ++dir)
        for (int k = 0; k < s.n_sweep; ++k)
            os << sweep.az_of(dir) << ',' << sweep.el_of(dir) << ',' << k << ','
               << sweep.ctf[dir][k].real() << ',' << sweep.ctf[dir][k].imag() << '\n';
}

SoundingSweep read_sweep_csv(std::istream &is)
{
    SoundingSweep sweep;
    SystemParams &s = sweep.system;
    s.az_grid_deg.clear();
    s.el_grid_deg.clear();

    std::string line;
    if (!std::getline(is, line) || line != "# thzchan.sweep/1")
        throw std::invalid_argument("read_sweep_csv: not a thzchan.sweep/1 file");

    std::map<std::string, std::string> kv;
    while (is.peek() == '#')
    {
        std::getline(is, line);
        std::string body = line.substr(2);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            continue;
        kv[body.substr(0, comma)] = body.substr(comma + 1);
    }

    auto num = [&](const std::string &key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("read_sweep_csv: missing header key " + key);
        return std::stod(it->second);
    };
    auto list = [&](const std::string &key) {
        std::vector<double> v;
        std::stringstream ss(kv.at(key));
        std::string tok;
        while (std::getline(ss, tok, ','))
            v.push_back(std::stod(tok));
        return v;
    };

    s.f_start_ghz = num("f_start_ghz");
    s.f_end_ghz = num("f_end_ghz");
    s.n_sweep = static_cast<int>(num("n_sweep"));
    s.noise_floor_dbm = num("noise_floor_dbm");
    s.tx_hpbw_deg = num("tx_hpbw_deg");
    s.rx_hpbw_deg = num("rx_hpbw_deg");
    s.tx_gain_dbi = num("tx_gain_dbi");
    s.rx_gain_dbi = num("rx_gain_dbi");
    s.window_w = static_cast<int>(num("window_w"));
    s.sidelobe_floor_db = num("sidelobe_floor_db");
    s.apply_tx_pattern = num("apply_tx_pattern") != 0.0;
    s.az_grid_deg = list("az_grid_deg");
    s.el_grid_deg = list("el_grid_deg");

    std::getline(is, line); // column header
    sweep.ctf.assign(s.n_dirs(), std::vector<std::complex<double>>(s.n_sweep));
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string tok;
        double vals[5];
        for (double &v : vals)
        {
            if (!std::getline(ss, tok, ','))
                throw std::invalid_argument("read_sweep_csv: malformed row");
            v = std::stod(tok);
        }
        // locate the direction index for (az, el)
        std::size_t ai = 0, ei = 0;
        while (ai < s.az_grid_deg.size() && s.az_grid_deg[ai] != vals[0])
            ++ai;
        while (ei < s.el_grid_deg.size() && s.el_grid_deg[ei] != vals[1])
            ++ei;
        if (ai == s.az_grid_deg.size() || ei == s.el_grid_deg.size())
            throw std::invalid_argument("read_sweep_csv: direction not on the grid");
        sweep.ctf[ei * s.n_az() + ai][static_cast<int>(vals[2])] = {vals[3], vals[4]};
    }
    sweep.validate();
    return sweep;
}

} // namespace thz
