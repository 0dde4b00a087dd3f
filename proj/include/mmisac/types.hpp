// SPDX-License-Identifier: Apache-2.0
//
// mmisac - dual-band mmWave ISAC channel sounding emulator and analysis toolkit
// Copyright (C) 2026 The mmisac authors
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

#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace mmisac
{
    using Point3 = Eigen::Vector3d;

    inline constexpr double kSpeedOfLight = 299792458.0;
    inline constexpr double kPi = std::numbers::pi;

    inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

    // Numeric values are the on-disk band_id / link_id encodings.
    enum class Band : std::uint32_t
    {
        B24 = 0,
        B60 = 1
    };

    enum class Side
    {
        Tx,
        Rx
    };

    enum class Link : std::uint32_t
    {
        Tx1Rx1 = 0,
        Tx1Rx2 = 1,
        Tx2Rx1 = 2,
        Tx2Rx2 = 3
    };

    inline constexpr std::array<Band, 2> kBands{Band::B24, Band::B60};
    inline constexpr std::array<Link, 4> kLinks{Link::Tx1Rx1, Link::Tx1Rx2, Link::Tx2Rx1, Link::Tx2Rx2};

    // 0 for Tx1/Rx1, 1 for Tx2/Rx2
    inline constexpr int tx_index(Link l) { return static_cast<int>(l) / 2; }
    inline constexpr int rx_index(Link l) { return static_cast<int>(l) % 2; }
    inline constexpr Link make_link(int tx, int rx) { return static_cast<Link>(2 * tx + rx); }

    std::string_view to_string(Band b);
    std::string_view to_string(Link l);
    std::string_view to_string(Side s);

    // Accepts the names produced by to_string(); throws ConfigError otherwise.
    Band parse_band(std::string_view s);
    Link parse_link(std::string_view s);
    Side parse_side(std::string_view s);

    Band band_from_id(std::uint32_t id);
    Link link_from_id(std::uint32_t id);

    /// A value that differs per frequency band.
    template <typename T>
    struct PerBand
    {
        T b24{};
        T b60{};

        T &operator[](Band b) { return b == Band::B24 ? b24 : b60; }
        const T &operator[](Band b) const { return b == Band::B24 ? b24 : b60; }
    };

    /// Wrap an angle onto (-pi, pi].
    double wrap_angle(double rad);

    /// Azimuth of the horizontal projection of v, counter-clockwise from +x.
    double azimuth_of(const Point3 &v);

    /// Elevation of v above the horizontal plane.
    double elevation_of(const Point3 &v);
}
