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
#include <sstream>

#include "mmisac/sounder.hpp"

using namespace mmisac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("multitone waveform")
{
    const MultitoneWaveform w = build_multitone_waveform(band_config(Band::B60));
    REQUIRE(w.tone_frequencies.size() == 1024);
    CHECK(w.n_samples == 2048);
    CHECK_THAT(w.sample_rate, WithinRel(800e6, 1e-15));
    CHECK_THAT(w.spacing(), WithinRel(390625.0, 1e-12));
    CHECK_THAT(w.tone_frequencies.front(), WithinRel(-511.5 * 390625.0, 1e-12));
    CHECK_THAT(w.tone_frequencies.back(), WithinRel(511.5 * 390625.0, 1e-12));
    // 2048 samples at 800 Msps span 2.56 us, one period of the tone spacing.
    CHECK_THAT(static_cast<double>(w.n_samples) / w.sample_rate, WithinRel(1.0 / w.spacing(), 1e-12));
}

TEST_CASE("beam gain main lobe and floor")
{
    const BeamPattern p{deg2rad(6.0), deg2rad(10.0), -25.0};
    CHECK(beam_gain(p, deg2rad(10.0)) == 1.0);
    // half-power points
    CHECK_THAT(beam_gain(p, deg2rad(13.0)), WithinAbs(0.7079457843841379, 1e-12));
    CHECK_THAT(beam_gain(p, deg2rad(7.0)), WithinAbs(0.7079457843841379, 1e-12));
    CHECK_THAT(20.0 * std::log10(beam_gain(p, deg2rad(13.0))), WithinAbs(-3.0, 0.01));
    // far off: floor
    CHECK_THAT(beam_gain(p, deg2rad(100.0)), WithinRel(std::pow(10.0, -25.0 / 20.0), 1e-12));
    // wrap-around: 350 deg is 20 deg from boresight the short way round
    CHECK_THAT(beam_gain(p, deg2rad(350.0)), WithinRel(beam_gain(p, deg2rad(30.0)), 1e-12));

    // monotone between boresight and the floor
    double prev = 1.0;
    for (int i = 1; i <= 200; ++i)
    {
        const double g = beam_gain(p, deg2rad(10.0 + 0.1 * i));
        CHECK(g <= prev);
        prev = g;
    }
}

TEST_CASE("beam grids of both bands")
{
    const BeamGridSet g = build_beam_grids();
    CHECK(g.tx24.size() == 5);
    CHECK(g.rx24.size() == 5);
    CHECK(g.tx60.size() == 11);
    CHECK(g.rx60.size() == 12);
    CHECK_THAT(g.tx24.hpbw_azimuth, WithinRel(deg2rad(15.0), 1e-12));
    CHECK_THAT(g.rx60.hpbw_azimuth, WithinRel(deg2rad(6.0), 1e-12));
    CHECK_THAT(g.tx60.hpbw_elevation, WithinRel(deg2rad(45.0), 1e-12));
    CHECK_THAT(g.rx60.hpbw_elevation, WithinRel(deg2rad(18.0), 1e-12));
    for (const BeamGrid *grid : {&g.tx24, &g.rx24, &g.tx60, &g.rx60})
    {
        CHECK_THAT(grid->steering_angles.front(), WithinAbs(deg2rad(-45.0), 1e-12));
        CHECK_THAT(grid->steering_angles.back(), WithinAbs(deg2rad(45.0), 1e-12));
        for (std::size_t i = 1; i < grid->size(); ++i)
            CHECK_THAT(grid->steering_angles[i] - grid->steering_angles[i - 1], WithinAbs(grid->spacing(), 1e-12));
    }
    CHECK(&g.get(Band::B60, Side::Rx) == &g.rx60);
    CHECK(g.tx24.azimuth_pattern(2).boresight == g.tx24.steering_angles[2]);
}

TEST_CASE("sidelobe floor must stay at or below -15 dB")
{
    CHECK_NOTHROW(build_beam_grids(-15.0));
    CHECK_THROWS(build_beam_grids(-10.0));
}

TEST_CASE("dual-band scan schedule")
{
    const ScanSchedule s = build_scan_schedule(build_beam_grids());
    REQUIRE(s.n_blocks == 132);
    REQUIRE(s.entries.size() == 264);

    std::set<std::pair<int, int>> pairs60, pairs24;
    std::size_t active24 = 0;
    for (std::size_t b = 0; b < s.n_blocks; ++b)
    {
        const ScanEntry &e24 = s.entries[2 * b];
        const ScanEntry &e60 = s.entries[2 * b + 1];
        CHECK(e24.band == Band::B24);
        CHECK(e60.band == Band::B60);
        CHECK(e24.block_index == b);
        CHECK(e60.active);
        // Tx-major over the 11 x 12 grid
        CHECK(e60.tx_beam == static_cast<int>(b / 12));
        CHECK(e60.rx_beam == static_cast<int>(b % 12));
        pairs60.insert({e60.tx_beam, e60.rx_beam});
        if (e24.active)
        {
            ++active24;
            CHECK(b < 25);
            pairs24.insert({e24.tx_beam, e24.rx_beam});
        }
        else
        {
            CHECK(e24.tx_beam == -1);
            CHECK(e24.rx_beam == -1);
        }
    }
    CHECK(pairs60.size() == 132);
    CHECK(active24 == 25);
    CHECK(pairs24.size() == 25);

    std::istringstream csv(schedule_csv(s));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "block,band,tx_beam,rx_beam,active");
    std::getline(csv, line);
    CHECK(line == "0,24GHz,0,0,1");
    std::size_t rows = 1;
    std::string last;
    while (std::getline(csv, line))
    {
        ++rows;
        last = line;
    }
    CHECK(rows == 264);
    CHECK(last == "131,60GHz,10,11,1");
}
