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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mmisac/scene.hpp"
#include "mmisac/types.hpp"

namespace mmisac
{
    inline constexpr int kNumLocations = 8;
    inline constexpr int kNumOrientations = 8;
    inline constexpr std::size_t kMaxPersonsPerCode = 3;

    /// One person of a scenario: label A-E, Loc 1-8, Orient 1-8.
    struct ScenarioEntry
    {
        char label = 'A';
        int location = 1;
        int orientation = 1;

        bool operator==(const ScenarioEntry &) const = default;
    };

    /// A scenario code such as "A21_C68". The empty code is the no-person baseline.
    struct ScenarioCode
    {
        std::vector<ScenarioEntry> entries;

        bool empty() const { return entries.empty(); }
        bool operator==(const ScenarioCode &) const = default;
    };

    /*!
     * Parse an underscore-separated code. Each token is a label A-E followed by a location
     * digit and an orientation digit, both 1-8. The empty string parses to the empty code.
     * Throws ParseError carrying the byte offset of the first offending character: bad
     * label, digit out of range, wrong token length, duplicate label, or more than three
     * persons.
     */
    ScenarioCode parse_scenario_code(std::string_view text);

    std::string format_scenario_code(const ScenarioCode &code);

    /// A11, A12, ..., A88 (location-major).
    std::vector<ScenarioCode> enumerate_single_person_campaign();

    /// The full measurement catalog: 64 single-person, 56 two-person and 30 three-person codes.
    std::vector<std::string> measurement_catalog();

    /*!
     * Campaign file: one code per line, '#' starts a comment, blank lines are ignored.
     * ParseError offsets are relative to the start of the file.
     */
    std::vector<ScenarioCode> parse_campaign(std::string_view text);

    /// Floor coordinates of Loc1-Loc8 (z = 0).
    struct LocationMap
    {
        std::array<Point3, kNumLocations> coordinates{};
        std::set<int> on_direct_path{1, 2, 3, 4};

        const Point3 &at(int location_index) const;
    };

    /*!
     * Default layout bound to a scene: Loc1 at the crossing of the Tx1-Rx2 and Tx2-Rx1
     * links, Loc2-Loc4 further along the Tx1-Rx2 segment (toward Tx1, toward Rx2, near Rx2),
     * Loc5-Loc8 offset 1 m from the crossing in the four floor-plan directions.
     * The coordinates approximate the measurement sketch; they are not surveyed values.
     */
    LocationMap default_location_map(const Scene &scene);

    /// Throws ConfigError unless Loc in on_direct_path lie on the Tx1-Rx2 segment within 1 cm
    /// and the others do not.
    void validate_location_map(const LocationMap &map, const Scene &scene);

    /// Facing azimuth of Orient k at `center`: Orient1 looks at Tx1, each step turns 45 deg clockwise.
    double orientation_azimuth(const Scene &scene, const Point3 &center, int orientation_index);

    /*!
     * Place the code's persons into a copy of `base`. Throws ConfigError on an unknown
     * location or orientation, or a label already present in the scene.
     */
    Scene bind_scenario(const ScenarioCode &code, const Scene &base, const LocationMap &locations);
}
