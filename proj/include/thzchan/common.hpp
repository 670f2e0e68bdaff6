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

#ifndef THZCHAN_COMMON_HPP
#define THZCHAN_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thz {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
inline constexpr double kPi = 3.14159265358979323846;

// Reference frequency for single-frequency path gain terms: center of the
// 201-209 GHz measurement band.
inline constexpr double kDefaultRefFreqGhz = 205.0;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Wrap an angle in degrees to [0, 360).
inline double wrap_deg(double a)
{
    double w = std::fmod(a, 360.0);
    return w < 0.0 ? w + 360.0 : w;
}

inline double lin_to_db(double p) { return 10.0 * std::log10(p); }
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }

// Propagation delay of a straight segment, in nanoseconds.
inline double distance_to_delay_ns(double d_m) { return d_m / kSpeedOfLight * 1e9; }
inline double delay_to_distance_m(double t_ns) { return t_ns * 1e-9 * kSpeedOfLight; }

struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Vec3 normalized() const
    {
        double n = norm();
        if (n == 0.0)
            throw std::invalid_argument("cannot normalize a zero vector");
        return {x / n, y / n, z / n};
    }
};

// Directions use azimuth measured from +x toward +y and elevation measured
// from the horizontal plane toward +z.
inline Vec3 azel_to_unit(double az_deg, double el_deg)
{
    double az = deg2rad(az_deg), el = deg2rad(el_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

inline double azimuth_deg(const Vec3 &v) { return wrap_deg(rad2deg(std::atan2(v.y, v.x))); }

inline double elevation_deg(const Vec3 &v)
{
    double n = v.norm();
    if (n == 0.0)
        return 0.0;
    return rad2deg(std::asin(std::clamp(v.z / n, -1.0, 1.0)));
}

// Great-circle angle between two directions, in degrees.
inline double angle_between_deg(const Vec3 &a, const Vec3 &b)
{
    double c = a.normalized().dot(b.normalized());
    return rad2deg(std::acos(std::clamp(c, -1.0, 1.0)));
}

} // namespace thz

#endif
