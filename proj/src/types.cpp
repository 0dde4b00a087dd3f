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

#include "mmisac/types.hpp"

#include <cmath>

#include "mmisac/errors.hpp"

namespace mmisac
{
    std::string_view to_string(Band b)
    {
        return b == Band::B24 ? "24GHz" : "60GHz";
    }

    std::string_view to_string(Link l)
    {
        switch (l)
        {
        case Link::Tx1Rx1:
            return "Tx1Rx1";
        case Link::Tx1Rx2:
            return "Tx1Rx2";
        case Link::Tx2Rx1:
            return "Tx2Rx1";
        case Link::Tx2Rx2:
            return "Tx2Rx2";
        }
        return "?";
    }

    std::string_view to_string(Side s)
    {
        return s == Side::Tx ? "tx" : "rx";
    }

    Band parse_band(std::string_view s)
    {
        for (Band b : kBands)
            if (s == to_string(b))
                return b;
        throw ConfigError("unknown band '" + std::string(s) + "'");
    }

    Link parse_link(std::string_view s)
    {
        for (Link l : kLinks)
            if (s == to_string(l))
                return l;
        throw ConfigError("unknown link '" + std::string(s) + "'");
    }

    Side parse_side(std::string_view s)
    {
        if (s == "tx" || s == "Tx")
            return Side::Tx;
        if (s == "rx" || s == "Rx")
            return Side::Rx;
        throw ConfigError("unknown side '" + std::string(s) + "'");
    }

    Band band_from_id(std::uint32_t id)
    {
        if (id > 1)
            throw ConfigMismatch("band_id " + std::to_string(id) + " out of range");
        return static_cast<Band>(id);
    }

    Link link_from_id(std::uint32_t id)
    {
        if (id > 3)
            throw ConfigMismatch("link_id " + std::to_string(id) + " out of range");
        return static_cast<Link>(id);
    }

    double wrap_angle(double rad)
    {
        double w = std::remainder(rad, 2.0 * kPi); // [-pi, pi]
        if (w <= -kPi)
            w += 2.0 * kPi;
        return w;
    }

    double azimuth_of(const Point3 &v)
    {
        return std::atan2(v.y(), v.x());
    }

    double elevation_of(const Point3 &v)
    {
        return std::atan2(v.z(), std::hypot(v.x(), v.y()));
    }
}
