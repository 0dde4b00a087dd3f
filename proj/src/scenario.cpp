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

#include "mmisac/scenario.hpp"

#include <cmath>

#include "mmisac/errors.hpp"

namespace mmisac
{
    namespace
    {
        // Persons with two and three members from the measurement campaign, in catalog order.
        constexpr std::string_view kTwoPersonCodes[] = {
            "B21_C41", "B23_C43", "B25_C33", "B26_C37", "B26_C44", "B28_C38", "B32_C24", "B33_C28",
            "B38_C26", "B41_C24", "B43_C27", "B44_C27", "A21_C68", "A21_C71", "A22_C51", "A22_C71",
            "A23_C64", "A23_C72", "A23_C73", "A23_C76", "A25_C54", "A26_C56", "A26_C61", "A27_C73",
            "A51_C22", "A51_C24", "A51_C61", "A51_C71", "A52_C68", "A52_C78", "A53_C68", "A53_C72",
            "A53_C73", "A54_C62", "A54_C63", "A54_C73", "A55_C66", "A55_C75", "A56_C24", "A56_C78",
            "A61_C23", "A63_C21", "A68_C26", "A81_C21", "A81_C24", "A81_C71", "A82_C28", "A82_C72",
            "A83_C77", "A85_C27", "A86_C74", "A87_C23", "A87_C73", "A88_C26", "A88_C72", "A84_C77"};

        constexpr std::string_view kThreePersonCodes[] = {
            "A22_D76_E88", "A23_D67_E58", "A23_D78_E81", "A24_D61_E52", "A51_D24_E66", "A52_D23_E62",
            "A52_D68_E88", "A53_D68_E71", "A53_D85_E72", "A54_D66_E78", "A55_D61_E82", "A56_D82_E75",
            "A61_D52_E23", "A61_D82_E56", "A63_D53_E73", "A66_D58_E27", "A67_D55_E77", "A68_D86_E52",
            "A71_D66_E58", "A71_D87_E26", "A72_D54_E81", "A73_D56_E86", "A73_D68_E54", "A73_D68_E22",
            "A81_D67_E52", "A81_D71_E52", "A82_D22_E72", "A86_D66_E54", "A86_D77_E54", "A87_D28_E74"};

        int index_digit(char c, std::size_t pos, const char *what)
        {
            if (c < '0' || c > '9')
                throw ParseError(std::string("expected a ") + what + " digit", pos);
            const int v = c - '0';
            if (v < 1 || v > 8)
                throw ParseError(std::string(what) + " " + std::to_string(v) + " out of range 1-8", pos);
            return v;
        }

        Eigen::Vector2d xy(const Point3 &p) { return {p.x(), p.y()}; }

        double lateral_offset(const Eigen::Vector2d &a, const Eigen::Vector2d &b, const Eigen::Vector2d &p, double &t)
        {
            const Eigen::Vector2d d = b - a;
            t = (p - a).dot(d) / d.squaredNorm();
            const Eigen::Vector2d foot = a + t * d;
            return (p - foot).norm();
        }
    }

    ScenarioCode parse_scenario_code(std::string_view text)
    {
        ScenarioCode code;
        if (text.empty())
            return code;

        std::size_t start = 0;
        while (true)
        {
            std::size_t end = text.find('_', start);
            if (end == std::string_view::npos)
                end = text.size();

            if (code.entries.size() == kMaxPersonsPerCode)
                throw ParseError("more than three persons in a scenario code", start);
            if (end == start)
                throw ParseError("empty scenario token", start);

            const char label = text[start];
            if (label < 'A' || label > 'E')
                throw ParseError(std::string("bad person label '") + label + "', expected A-E", start);
            if (end - start < 3)
                throw ParseError("scenario token too short, expected label + location + orientation", end);
            if (end - start > 3)
                throw ParseError("unexpected character after orientation digit", start + 3);

            ScenarioEntry e;
            e.label = label;
            e.location = index_digit(text[start + 1], start + 1, "location");
            e.orientation = index_digit(text[start + 2], start + 2, "orientation");
            for (const ScenarioEntry &prev : code.entries)
                if (prev.label == label)
                    throw ParseError(std::string("duplicate person label ") + label, start);
            code.entries.push_back(e);

            if (end == text.size())
                break;
            start = end + 1;
            if (start == text.size())
                throw ParseError("trailing underscore", end);
        }
        return code;
    }

    std::string format_scenario_code(const ScenarioCode &code)
    {
        std::string out;
        for (const ScenarioEntry &e : code.entries)
        {
            if (!out.empty())
                out += '_';
            out += e.label;
            out += static_cast<char>('0' + e.location);
            out += static_cast<char>('0' + e.orientation);
        }
        return out;
    }

    std::vector<ScenarioCode> enumerate_single_person_campaign()
    {
        std::vector<ScenarioCode> codes;
        codes.reserve(kNumLocations * kNumOrientations);
        for (int loc = 1; loc <= kNumLocations; ++loc)
            for (int orient = 1; orient <= kNumOrientations; ++orient)
                codes.push_back(ScenarioCode{{ScenarioEntry{'A', loc, orient}}});
        return codes;
    }

    std::vector<std::string> measurement_catalog()
    {
        std::vector<std::string> out;
        for (const ScenarioCode &c : enumerate_single_person_campaign())
            out.push_back(format_scenario_code(c));
        for (std::string_view s : kTwoPersonCodes)
            out.emplace_back(s);
        for (std::string_view s : kThreePersonCodes)
            out.emplace_back(s);
        return out;
    }

    std::vector<ScenarioCode> parse_campaign(std::string_view text)
    {
        std::vector<ScenarioCode> codes;
        std::size_t line_start = 0, line_no = 0;
        while (line_start <= text.size())
        {
            std::size_t line_end = text.find('\n', line_start);
            if (line_end == std::string_view::npos)
                line_end = text.size();
            ++line_no;

            std::string_view line = text.substr(line_start, line_end - line_start);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first != std::string_view::npos)
            {
                std::size_t last = line.find_last_not_of(" \t\r");
                std::string_view token = line.substr(first, last - first + 1);
                try
                {
                    codes.push_back(parse_scenario_code(token));
                }
                catch (const ParseError &e)
                {
                    throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_start + first + e.offset());
                }
            }
            if (line_end == text.size())
                break;
            line_start = line_end + 1;
        }
        return codes;
    }

    const Point3 &LocationMap::at(int location_index) const
    {
        if (location_index < 1 || location_index > kNumLocations)
            throw ConfigError("unknown location index " + std::to_string(location_index));
        return coordinates[location_index - 1];
    }

    LocationMap default_location_map(const Scene &scene)
    {
        const Eigen::Vector2d tx1 = xy(scene.tx[0].position.b60), rx2 = xy(scene.rx[1].position.b60);
        const Eigen::Vector2d tx2 = xy(scene.tx[1].position.b60), rx1 = xy(scene.rx[0].position.b60);

        // Crossing of Tx1-Rx2 with Tx2-Rx1, as a parameter along Tx1 -> Rx2.
        const Eigen::Vector2d d1 = rx2 - tx1, d2 = rx1 - tx2;
        const double denom = d1.x() * d2.y() - d1.y() * d2.x();
        double t_cross = 0.5;
        if (std::abs(denom) > 1e-12)
        {
            const Eigen::Vector2d w = tx2 - tx1;
            t_cross = (w.x() * d2.y() - w.y() * d2.x()) / denom;
        }
        auto clamp = [](double t)
        { return std::min(0.9, std::max(0.1, t)); };
        const Eigen::Vector2d crossing = tx1 + clamp(t_cross) * d1;

        auto along = [&](double t) -> Point3
        {
            const Eigen::Vector2d p = tx1 + clamp(t) * d1;
            return {p.x(), p.y(), scene.room.min_corner.z()};
        };
        auto offset = [&](double dx, double dy) -> Point3
        { return {crossing.x() + dx, crossing.y() + dy, scene.room.min_corner.z()}; };

        LocationMap m;
        m.coordinates = {along(t_cross), along(t_cross - 0.2), along(t_cross + 0.2), along(t_cross + 0.35),
                         offset(0.0, 1.0), offset(1.0, 0.0), offset(0.0, -1.0), offset(-1.0, 0.0)};
        m.on_direct_path = {1, 2, 3, 4};
        return m;
    }

    void validate_location_map(const LocationMap &map, const Scene &scene)
    {
        const Eigen::Vector2d tx1 = xy(scene.tx[0].position.b60), rx2 = xy(scene.rx[1].position.b60);
        for (int loc = 1; loc <= kNumLocations; ++loc)
        {
            double t = 0.0;
            const double lateral = lateral_offset(tx1, rx2, xy(map.at(loc)), t);
            const bool on_segment = lateral <= 0.01 && t > 0.0 && t < 1.0;
            const bool expected = map.on_direct_path.count(loc) > 0;
            if (on_segment != expected)
                throw ConfigError("Loc" + std::to_string(loc) + (expected ? " should" : " should not") +
                                  " lie on the Tx1-Rx2 segment (lateral offset " + std::to_string(lateral) + " m)");
            if (!scene.room.contains(map.at(loc) + Point3(0, 0, 1e-6)))
                throw ConfigError("Loc" + std::to_string(loc) + " is outside the room");
        }
    }

    double orientation_azimuth(const Scene &scene, const Point3 &center, int orientation_index)
    {
        if (orientation_index < 1 || orientation_index > kNumOrientations)
            throw ConfigError("unknown orientation index " + std::to_string(orientation_index));
        const Point3 to_tx1 = scene.tx[0].position.b60 - center;
        return wrap_angle(azimuth_of(to_tx1) - deg2rad(45.0) * (orientation_index - 1));
    }

    Scene bind_scenario(const ScenarioCode &code, const Scene &base, const LocationMap &locations)
    {
        Scene scene = base;
        for (const ScenarioEntry &e : code.entries)
        {
            for (const Person &p : scene.persons)
                if (p.label == e.label)
                    throw ConfigError(std::string("person ") + e.label + " is already in the scene");
            if (e.label < 'A' || e.label > 'E')
                throw ConfigError(std::string("bad person label ") + e.label);

            Person p;
            p.label = e.label;
            p.location_index = e.location;
            p.orientation_index = e.orientation;
            p.center = locations.at(e.location);
            p.facing_azimuth = orientation_azimuth(scene, p.center, e.orientation);
            scene.persons.push_back(p);
        }
        return scene;
    }
}
