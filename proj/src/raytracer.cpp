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

#include "thzchan/raytracer.hpp"

#include <algorithm>
#include <array>
#include <ostream>

namespace thz {

namespace {

constexpr double kGeomEps = 1e-9; // meters; edge ties are accepted

struct Plane
{
    int axis;     // 0=x, 1=y, 2=z
    double coord; // 0 or room extent along that axis
};

Plane plane_of(Surface s, const RoomGeometry &g)
{
    switch (s)
    {
    case Surface::XMin: return {0, 0.0};
    case Surface::XMax: return {0, g.length_m};
    case Surface::YMin: return {1, 0.0};
    case Surface::YMax: return {1, g.width_m};
    case Surface::Floor: return {2, 0.0};
    case Surface::Ceiling: return {2, g.height_m};
    }
    throw std::invalid_argument("unknown surface");
}

double axis_value(const Vec3 &p, int axis)
{
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

Vec3 mirror(const Vec3 &p, const Plane &pl)
{
    Vec3 m = p;
    double v = 2.0 * pl.coord - axis_value(p, pl.axis);
    if (pl.axis == 0)
        m.x = v;
    else if (pl.axis == 1)
        m.y = v;
    else
        m.z = v;
    return m;
}

// Point must lie inside the finite wall rectangle (ties accepted).
bool on_face(const Vec3 &q, Surface s, const RoomGeometry &g)
{
    Plane pl = plane_of(s, g);
    if (std::abs(axis_value(q, pl.axis) - pl.coord) > 1e-6)
        return false;
    auto in01 = [](double v, double hi) { return v >= -kGeomEps && v <= hi + kGeomEps; };
    switch (pl.axis)
    {
    case 0: return in01(q.y, g.width_m) && in01(q.z, g.height_m);
    case 1: return in01(q.x, g.length_m) && in01(q.z, g.height_m);
    default: return in01(q.x, g.length_m) && in01(q.y, g.width_m);
    }
}

// Intersection of segment [a, b] with the plane; false when the segment does
// not actually cross it.
bool segment_plane_hit(const Vec3 &a, const Vec3 &b, const Plane &pl, Vec3 &q)
{
    double va = axis_value(a, pl.axis) - pl.coord;
    double vb = axis_value(b, pl.axis) - pl.coord;
    double denom = va - vb;
    if (std::abs(denom) < 1e-15)
        return false; // parallel or degenerate
    double t = va / denom;
    if (t < -1e-12 || t > 1.0 + 1e-12)
        return false;
    q = a + (b - a) * t;
    return true;
}

// Fold the image chain back from Rx and recover the reflection points.
bool build_reflection_path(const RoomGeometry &g, const std::vector<Surface> &seq,
                           const std::vector<Vec3> &images, TracedPath &out)
{
    const int k = static_cast<int>(seq.size());
    std::vector<Vec3> points(k);

    Vec3 p = g.rx;
    for (int i = k - 1; i >= 0; --i)
    {
        Plane pl = plane_of(seq[i], g);
        Vec3 q;
        if (!segment_plane_hit(p, images[i], pl, q))
            return false;
        if (!on_face(q, seq[i], g))
            return false;
        points[i] = q;
        p = q;
    }

    double len = (images[k - 1] - g.rx).norm();
    if (len < kGeomEps)
        return false;

    Vec3 incoming = points[k - 1] - g.rx; // direction the wave arrives from
    if (incoming.norm() < kGeomEps)
        return false;

    out.length_m = len;
    out.toa_ns = distance_to_delay_ns(len);
    out.aoa_az_deg = azimuth_deg(incoming);
    out.aoa_el_deg = elevation_deg(incoming);
    out.aod = (points[0] - g.tx).normalized();
    out.reflection_order = k;
    out.surfaces_hit = seq;
    out.reflection_points = std::move(points);
    return true;
}

void enumerate(const RoomGeometry &g, int order_max, std::vector<Surface> &seq,
               std::vector<Vec3> &images, std::vector<TracedPath> &out)
{
    for (Surface s : g.active_surfaces)
    {
        if (!seq.empty() && seq.back() == s)
            continue; // two consecutive bounces on the same wall are impossible

        Vec3 prev = images.empty() ? g.tx : images.back();
        seq.push_back(s);
        images.push_back(mirror(prev, plane_of(s, g)));

        TracedPath path;
        if (build_reflection_path(g, seq, images, path))
            out.push_back(std::move(path));

        if (static_cast<int>(seq.size()) < order_max)
            enumerate(g, order_max, seq, images, out);

        seq.pop_back();
        images.pop_back();
    }
}

} // namespace

std::string to_string(Surface s)
{
    switch (s)
    {
    case Surface::XMin: return "x_min";
    case Surface::XMax: return "x_max";
    case Surface::YMin: return "y_min";
    case Surface::YMax: return "y_max";
    case Surface::Floor: return "floor";
    case Surface::Ceiling: return "ceiling";
    }
    throw std::invalid_argument("unknown surface");
}

Surface surface_from_string(const std::string &name)
{
    static const std::array<Surface, 6> all = {Surface::XMin, Surface::XMax, Surface::YMin,
                                               Surface::YMax, Surface::Floor, Surface::Ceiling};
    for (Surface s : all)
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown surface name: " + name);
}

void RoomGeometry::validate() const
{
    if (length_m <= 0.0 || width_m <= 0.0 || height_m <= 0.0)
        throw std::invalid_argument("room dimensions must be positive");
    if (!inside(tx) || !inside(rx))
        throw std::invalid_argument("tx and rx must lie strictly inside the room");
    if ((tx - rx).norm() < kGeomEps)
        throw std::invalid_argument("tx and rx coincide");
    if (max_reflection_order < 0)
        throw std::invalid_argument("max_reflection_order must be >= 0");
}

bool RoomGeometry::inside(const Vec3 &p, double margin) const
{
    return p.x > margin && p.x < length_m - margin && p.y > margin && p.y < width_m - margin &&
           p.z > margin && p.z < height_m - margin;
}

std::vector<TracedPath> trace(const RoomGeometry &geom, int order_max, double f_ref_ghz)
{
    geom.validate();
    if (order_max < 0)
        throw std::invalid_argument("order_max must be >= 0");

    std::vector<TracedPath> out;

    // LoS path; the room is convex and empty, so it is never obstructed.
    {
        TracedPath los;
        Vec3 v = geom.tx - geom.rx;
        los.length_m = v.norm();
        los.toa_ns = distance_to_delay_ns(los.length_m);
        los.aoa_az_deg = azimuth_deg(v);
        los.aoa_el_deg = elevation_deg(v);
        los.aod = (geom.rx - geom.tx).normalized();
        los.reflection_order = 0;
        out.push_back(std::move(los));
    }

    if (order_max > 0)
    {
        std::vector<Surface> seq;
        std::vector<Vec3> images;
        enumerate(geom, order_max, seq, images, out);
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const TracedPath &a, const TracedPath &b) { return a.toa_ns < b.toa_ns; });

    for (TracedPath &p : out)
        p.gain = path_gain(p.toa_ns, f_ref_ghz, 0.0);

    return out;
}

double path_gain(double toa_ns, double f_ghz, double rl_db)
{
    if (toa_ns <= 0.0)
        throw std::invalid_argument("path_gain: delay must be positive");
    if (f_ghz <= 0.0)
        throw std::invalid_argument("path_gain: frequency must be positive");
    return db_to_amp(-rl_db) / (4.0 * kPi * f_ghz * toa_ns);
}

double path_gain(const TracedPath &path, double f_ghz, double rl_db)
{
    return path_gain(path.toa_ns, f_ghz, rl_db);
}

std::pair<double, double> hallway_geometry_check(double l_los_m, double l_r_m)
{
    if (l_los_m <= 0.0 || l_r_m <= 0.0)
        throw std::invalid_argument("hallway_geometry_check: lengths must be positive");
    double delta_l = std::sqrt(l_los_m * l_los_m + 4.0 * l_r_m * l_r_m) - l_los_m;
    double delta_phi = rad2deg(std::atan2(2.0 * l_r_m, l_los_m));
    return {delta_l, delta_phi};
}

void write_paths_csv(std::ostream &os, const std::vector<TracedPath> &paths, double f_ref_ghz)
{
    os << "toa_ns,aoa_az_deg,aoa_el_deg,order,gain_db\n";
    for (const TracedPath &p : paths)
    {
        double g = path_gain(p.toa_ns, f_ref_ghz, 0.0);
        os << p.toa_ns << ',' << p.aoa_az_deg << ',' << p.aoa_el_deg << ',' << p.reflection_order
           << ',' << lin_to_db(g * g) << '\n';
    }
}

} // namespace thz
