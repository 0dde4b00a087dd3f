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

#include "mmisac/band.hpp"

#include <cmath>

#include "mmisac/errors.hpp"

namespace mmisac
{
    void BandConfig::validate() const
    {
        auto positive = [](double x)
        { return std::isfinite(x) && x > 0.0; };
        if (!positive(center_frequency) || !positive(bandwidth) || !positive(sample_rate) || n_tones == 0)
            throw ConfigError("band " + std::string(to_string(band)) + ": frequencies, rate and tone count must be positive");
    }

    BandConfig band_config(Band band)
    {
        BandConfig c;
        c.band = band;
        c.n_waveform_samples = 2048;
        c.sample_rate = 800e6;
        if (band == Band::B24)
        {
            c.center_frequency = 24e9;
            c.bandwidth = 200e6;
            c.n_tones = 512;
        }
        else
        {
            c.center_frequency = 60e9;
            c.bandwidth = 400e6;
            c.n_tones = 1024;
        }
        return c;
    }

    BandConfig custom_band_config(Band band, std::size_t n_tones, double bandwidth)
    {
        BandConfig c = band_config(band);
        c.n_tones = n_tones;
        c.bandwidth = bandwidth;
        c.validate();
        return c;
    }
}
