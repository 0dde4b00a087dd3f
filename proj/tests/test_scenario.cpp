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

#include <catch_amalgamated.hpp>

#include <set>

#include "mmisac/errors.hpp"
#include "mmisac/fresnel.hpp"
#include "mmisac/scenario.hpp"

using namespace mmisac;
using Catch::Matchers::WithinAbs;

namespace
{
    std::size_t error_offset(std::string_view code)
    {
        try
        {
            parse_scenario_code(code);
        }
        catch (const ParseError &e)
        {
            return e.offset();
        }
        FAIL("expected ParseError for " << code);
        return 0;
    }
}

TEST_CASE("parse and format")
{
    const ScenarioCode c = parse_scenario_code("A21_C68");
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0] == ScenarioEntry{'A', 2, 1});
    CHECK(c.entries[1] == ScenarioEntry{'C', 6, 8});
    CHECK(format_scenario_code(c) == "A21_C68");
    CHECK(parse_scenario_code("").empty());
    CHECK(format_scenario_code(ScenarioCode{}).empty());
}

TEST_CASE("malformed codes report the offending byte")
{
    CHECK(error_offset("X11") == 0);     // bad label
    CHECK(error_offset("A91") == 1);     // location out of range
    CHECK(error_offset("A10") == 2);     // orientation out of range
    CHECK(error_offset("A1") == 2);      // too short
    CHECK(error_offset("A111") == 3);    // too long
    CHECK(error_offset("A11_A22") == 4); // duplicate label
    CHECK(error_offset("A11_") == 3);    // trailing separator
    CHECK(error_offset("A11__B22") == 4);
    CHECK(error_offset("A11_B22_C33_D44") == 12); // fourth person
    CHECK(error_offset("a11") == 0);
}

TEST_CASE("single-person campaign")
{
    const auto codes = enumerate_single_person_campaign();
    REQUIRE(codes.size() == 64);
    CHECK(format_scenario_code(codes.front()) == "A11");
    CHECK(format_scenario_code(codes[1]) == "A12");
    CHECK(format_scenario_code(codes.back()) == "A88");
}

TEST_CASE("measurement catalog")
{
    const auto catalog = measurement_catalog();
    REQUIRE(catalog.size() == 150);
    std::set<std::string> unique(catalog.begin(), catalog.end());
    CHECK(unique.size() == 150);
    std::array<int, 4> by_count{};
    for (const std::string &code : catalog)
    {
        const ScenarioCode c = parse_scenario_code(code);
        ++by_count[c.entries.size()];
        CHECK(format_scenario_code(c) == code);
    }
    CHECK(by_count[1] == 64);
    CHECK(by_count[2] == 56);
    CHECK(by_count[3] == 30);
}

TEST_CASE("campaign files")
{
    const std::string text = "# first batch\nA11\n  B22_C33  \n\nA88 # trailing comment\n";
    const auto codes = parse_campaign(text);
    REQUIRE(codes.size() == 3);
    CHECK(format_scenario_code(codes[1]) == "B22_C33");
    CHECK(parse_campaign("").empty());
    CHECK(parse_campaign("# nothing\n\n").empty());
    try
    {
        parse_campaign("A11\nB92\n");
        FAIL("expected ParseError");
    }
    catch (const ParseError &e)
    {
        CHECK(e.offset() == 5);
    }
}

TEST_CASE("default location layout")
{
    const Scene s = default_scene();
    const LocationMap m = default_location_map(s);
    CHECK_NOTHROW(validate_location_map(m, s));
    const Point3 tx1 = s.tx[0].position.b60, rx2 = s.rx[1].position.b60;
    const Point3 tx2 = s.tx[1].position.b60, rx1 = s.rx[0].position.b60;
    auto lateral = [](const Point3 &a, const Point3 &b, const Point3 &p)
    {
        const Eigen::Vector2d d = (b - a).head<2>().normalized();
        const Eigen::Vector2d w = (p - a).head<2>();
        return std::abs(d.x() * w.y() - d.y() * w.x());
    };
    // Loc1 is on both crossing links.
    CHECK(lateral(tx1, rx2, m.at(1)) < 1e-9);
    CHECK(lateral(tx2, rx1, m.at(1)) < 1e-9);
    for (int k = 2; k <= 4; ++k)
        CHECK(lateral(tx1, rx2, m.at(k)) < 1e-9);
    for (int k = 5; k <= 8; ++k)
        CHECK_THAT((m.at(k) - m.at(1)).norm(), WithinAbs(1.0, 1e-12));
    // Loc1 sits inside the first Fresnel zone of Tx1-Rx2 in both bands (at torso height).
    for (Band b : kBands)
    {
        Point3 p = m.at(1);
        p.z() = s.tx[0].position[b].z();
        CHECK(point_in_first_fresnel(s.tx[0].position[b], s.rx[1].position[b], p, band_config(b).wavelength()));
    }
    CHECK_THROWS_AS(m.at(0), ConfigError);
    CHECK_THROWS_AS(m.at(9), ConfigError);

    LocationMap bad = m;
    bad.coordinates[1].x() += 0.05;
    CHECK_THROWS_AS(validate_location_map(bad, s), ConfigError);
}

TEST_CASE("orientation azimuths")
{
    const Scene s = default_scene();
    const Point3 c(2.0, 3.0, 0.0);
    const double toward_tx1 = azimuth_of(s.tx[0].position.b60 - c);
    CHECK_THAT(wrap_angle(orientation_azimuth(s, c, 1) - toward_tx1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(wrap_angle(orientation_azimuth(s, c, 3) - (toward_tx1 - kPi / 2.0)), WithinAbs(0.0, 1e-12));
    CHECK_THAT(wrap_angle(orientation_azimuth(s, c, 5) - (toward_tx1 + kPi)), WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(orientation_azimuth(s, c, 0), ConfigError);
}

TEST_CASE("binding persons into a scene")
{
    const Scene base = default_scene();
    const LocationMap m = default_location_map(base);
    const Scene s = bind_scenario(parse_scenario_code("A15_B63"), base, m);
    REQUIRE(s.persons.size() == 2);
    CHECK(s.persons[0].label == 'A');
    CHECK(s.persons[0].center == m.at(1));
    CHECK(s.persons[1].location_index == 6);
    CHECK_THAT(s.persons[1].facing_azimuth, WithinAbs(orientation_azimuth(base, m.at(6), 3), 1e-15));
    CHECK(bind_scenario(ScenarioCode{}, base, m).persons.empty());
    CHECK_THROWS_AS(bind_scenario(parse_scenario_code("A11"), s, m), ConfigError);
}
