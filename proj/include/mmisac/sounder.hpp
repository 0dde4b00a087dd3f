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

#include <cstddef>
#include <string>
#include <vector>

#include "mmisac/band.hpp"
#include "mmisac/types.hpp"

namespace mmisac
{
    inline constexpr double kDefaultSidelobeFloorDb = -25.0;

    /// Multitone sounding signal of one band: uniformly spaced tones centered on the carrier.
    struct MultitoneWaveform
    {
        Band band = Band::B60;
        std::vector<double> tone_frequencies; // Hz, relative to the band center
        std::size_t n_samples = 0;
        double sample_rate = 0.0;

        double spacing() const;
    };

    MultitoneWaveform build_multitone_waveform(const BandConfig &band);

    /*!
     * Azimuth beam pattern: Gaussian main lobe in dB, i.e. the gain falls by 3 dB at
     * boresight +- hpbw/2 and quadratically (in dB) beyond, clamped at a flat sidelobe floor.
     */
    struct BeamPattern
    {
        double hpbw = 0.0;      // rad
        double boresight = 0.0; // rad
        double sidelobe_floor_db = kDefaultSidelobeFloorDb;
    };

    /// Linear amplitude gain of `pattern` toward `angle` (rad). The offset wraps on +-pi.
    double beam_gain(const BeamPattern &pattern, double angle);

    /// Steering directions of one array in one band, relative to the array broadside.
    struct BeamGrid
    {
        Side side = Side::Tx;
        Band band = Band::B60;
        std::vector<double> steering_angles; // rad, increasing
        double hpbw_azimuth = 0.0;           // rad
        double hpbw_elevation = 0.0;         // rad
        double sidelobe_floor_db = kDefaultSidelobeFloorDb;

        std::size_t size() const { return steering_angles.size(); }
        double spacing() const;
        BeamPattern azimuth_pattern(std::size_t beam) const;
        BeamPattern elevation_pattern() const;
    };

    /// 5/5 beams at 24 GHz and 11 Tx / 12 Rx beams at 60 GHz, uniformly spaced over +-45 deg.
    BeamGrid build_beam_grid(const BandConfig &band, Side side, double sidelobe_floor_db = kDefaultSidelobeFloorDb);

    /// The four grids of the dual-band sounder.
    struct BeamGridSet
    {
        BeamGrid tx24, rx24, tx60, rx60;

        const BeamGrid &get(Band band, Side side) const;
        BeamGrid &get(Band band, Side side);
    };

    BeamGridSet build_beam_grids(double sidelobe_floor_db = kDefaultSidelobeFloorDb);

    /// One band slot of one TDM measurement block. Beam indices are -1 on inactive slots.
    struct ScanEntry
    {
        std::size_t block_index = 0;
        Band band = Band::B60;
        int tx_beam = -1;
        int rx_beam = -1;
        bool active = false;
    };

    struct ScanSchedule
    {
        std::size_t n_blocks = 0;
        std::vector<ScanEntry> entries; // block-major, 24 GHz slot before 60 GHz slot
    };

    /*!
     * Dual-band TDM scan. The block count is set by the larger (60 GHz) grid and blocks
     * walk its beam pairs Tx-major. The 24 GHz pairs occupy the first N_T*N_R blocks'
     * 24 GHz slot in the same Tx-major order; the remaining 24 GHz slots are idle.
     */
    ScanSchedule build_scan_schedule(const BeamGridSet &grids);

    /// CSV with header `block,band,tx_beam,rx_beam,active`.
    std::string schedule_csv(const ScanSchedule &schedule);
}
