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

#include "mmisac/types.hpp"

namespace mmisac
{
    /// Per-band sounding parameters of the multitone sounder.
    struct BandConfig
    {
        Band band = Band::B60;
        double center_frequency = 0.0; // Hz
        double bandwidth = 0.0;        // Hz
        std::size_t n_tones = 0;
        std::size_t n_waveform_samples = 0;
        double sample_rate = 0.0; // samples/s

        double tone_spacing() const { return bandwidth / static_cast<double>(n_tones); }
        double delay_bin_width() const { return 1.0 / bandwidth; }
        double max_delay() const { return 1.0 / tone_spacing(); }
        double wavelength() const { return kSpeedOfLight / center_frequency; }

        // Tone k offset from the band center; the tone set is symmetric about the center.
        double tone_offset(std::size_t k) const
        {
            return (static_cast<double>(k) - 0.5 * static_cast<double>(n_tones - 1)) * tone_spacing();
        }

        // Throws ConfigError when a field is non-positive or non-finite.
        void validate() const;
    };

    /// The sounder's stock configuration for a band (24 GHz: 512 tones in 200 MHz; 60 GHz: 1024 in 400 MHz).
    BandConfig band_config(Band band);

    /// Same sounder parameters with a different tone count and bandwidth; used for small test tensors.
    BandConfig custom_band_config(Band band, std::size_t n_tones, double bandwidth);
}
