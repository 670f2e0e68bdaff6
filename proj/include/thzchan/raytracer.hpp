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

#ifndef THZCHAN_RAYTRACER_HPP
#define THZCHAN_RAYTRACER_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "thzchan/common.hpp"

namespace thz {

// Reflecting boundary of an axis-aligned rectangular room.
enum class Surface
{
    XMin,
    XMax,
    YMin,
    YMax,
    Floor,
    Ceiling
};

std::string to_string(Surface s);
Surface surface_from_string(const std::string &name);

// Axis-aligned room: x in [0, length], y in [0, width], z in [0, height].
// Only the listed surfaces reflect; furniture is not modeled geometrically.
struct RoomGeometry
{
    double length_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
    Vec3 tx;
    Vec3 rx;
    std::vector<Surface> active_surfaces;
    int max_reflection_order = 2;

    void validate() const; // throws std::invalid_argument on degenerate setups
    bool inside(const Vec3 &p, double margin = 0.0) const;
    double tx_rx_distance() const { return (tx - rx).norm(); }
};

// One specular path found by the image method. Angles are in the world
// frame; gain is the free-space amplitude at the reference frequency with
// no reflection loss applied.
struct TracedPath
{
    double toa_ns = 0.0;
    double length_m = 0.0;
    double aoa_az_deg = 0.0; // [0, 360)
    double aoa_el_deg = 0.0;
    Vec3 aod;                // unit vector leaving Tx
    int reflection_order = 0;
    std::vector<Surface> surfaces_hit;     // in propagation order from Tx
    std::vector<Vec3> reflection_points;   // same order as surfaces_hit
    double gain = 0.0;
};

// LoS path plus every image-method reflection path up to order_max whose
// unfolded segments hit all claimed surfaces inside their finite extents.
// Output is sorted by time of arrival.
std::vector<TracedPath> trace(const RoomGeometry &geom, int order_max,
                              double f_ref_ghz = kDefaultRefFreqGhz);

// Amplitude of a path with aggregate reflection loss rl_db:
//   10^(-rl/20) / (4 pi f tau).
// The product f(GHz) * tau(ns) is dimensionless, so units cancel.
double path_gain(double toa_ns, double f_ghz, double rl_db);
double path_gain(const TracedPath &path, double f_ghz, double rl_db);

// Corridor geometry: extra path length and azimuth AoA offset of a wall
// reflection at lateral distance l_r versus the direct path of length l_los.
//   delta_l   = sqrt(l_los^2 + 4 l_r^2) - l_los
//   delta_phi = atan(2 l_r / l_los) in degrees
std::pair<double, double> hallway_geometry_check(double l_los_m, double l_r_m);

// One row per path: toa_ns, aoa_az_deg, aoa_el_deg, order, gain_db at f_ref.
void write_paths_csv(std::ostream &os, const std::vector<TracedPath> &paths, double f_ref_ghz);

} // namespace thz

#endif
