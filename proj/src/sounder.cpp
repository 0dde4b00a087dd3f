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

#include "mmisac/sounder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "mmisac/errors.hpp"

namespace mmisac
{
    namespace
    {
        constexpr double kScanSpan = deg2rad(90.0);

        std::size_t beam_count(Band band, Side side)
        {
            if (band == Band::B24)
                return 5;
            return side == Side::Tx ? 11 : 12;
        }

        double azimuth_hpbw(Band band)
        {
            return band == Band::B24 ? deg2rad(15.0) : deg2rad(6.0);
        }

        double elevation_hpbw(Band band, Side side)
        {
            if (band == Band::B60 && side == Side::Rx)
                return deg2rad(18.0);
            return deg2rad(45.0);
        }
    }

    double MultitoneWaveform::spacing() const
    {
        if (tone_frequencies.size() < 2)
            return 0.0;
        return tone_frequencies[1] - tone_frequencies[0];
    }

    MultitoneWaveform build_multitone_waveform(const BandConfig &band)
    {
        band.validate();
        MultitoneWaveform w;
        w.band = band.band;
        w.n_samples = band.n_waveform_samples;
        w.sample_rate = band.sample_rate;
        w.tone_frequencies.resize(band.n_tones);
        for (std::size_t k = 0; k < band.n_tones; ++k)
            w.tone_frequencies[k] = band.tone_offset(k);
        return w;
    }

    double beam_gain(const BeamPattern &pattern, double angle)
    {
        const double offset = wrap_angle(angle - pattern.boresight);
        const double x = 2.0 * offset / pattern.hpbw;
        const double gain_db = std::max(-3.0 * x * x, pattern.sidelobe_floor_db);
        return std::pow(10.0, gain_db / 20.0);
    }

    double BeamGrid::spacing() const
    {
        if (steering_angles.size() < 2)
            return 0.0;
        return (steering_angles.back() - steering_angles.front()) / static_cast<double>(steering_angles.size() - 1);
    }

    BeamPattern BeamGrid::azimuth_pattern(std::size_t beam) const
    {
        return BeamPattern{hpbw_azimuth, steering_angles.at(beam), sidelobe_floor_db};
    }

    BeamPattern BeamGrid::elevation_pattern() const
    {
        return BeamPattern{hpbw_elevation, 0.0, sidelobe_floor_db};
    }

    BeamGrid build_beam_grid(const BandConfig &band, Side side, double sidelobe_floor_db)
    {
        band.validate();
        if (!(sidelobe_floor_db <= -15.0))
            throw ConfigError("sidelobe floor must be at most -15 dB");

        BeamGrid g;
        g.side = side;
        g.band = band.band;
        g.hpbw_azimuth = azimuth_hpbw(band.band);
        g.hpbw_elevation = elevation_hpbw(band.band, side);
        g.sidelobe_floor_db = sidelobe_floor_db;

        const std::size_t n = beam_count(band.band, side);
        g.steering_angles.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.steering_angles[i] = -0.5 * kScanSpan + kScanSpan * static_cast<double>(i) / static_cast<double>(n - 1);
        return g;
    }

    const BeamGrid &BeamGridSet::get(Band band, Side side) const
    {
        if (band == Band::B24)
            return side == Side::Tx ? tx24 : rx24;
        return side == Side::Tx ? tx60 : rx60;
    }

    BeamGrid &BeamGridSet::get(Band band, Side side)
    {
        return const_cast<BeamGrid &>(std::as_const(*this).get(band, side));
    }

    BeamGridSet build_beam_grids(double sidelobe_floor_db)
    {
        const BandConfig b24 = band_config(Band::B24), b60 = band_config(Band::B60);
        return BeamGridSet{build_beam_grid(b24, Side::Tx, sidelobe_floor_db), build_beam_grid(b24, Side::Rx, sidelobe_floor_db),
                           build_beam_grid(b60, Side::Tx, sidelobe_floor_db), build_beam_grid(b60, Side::Rx, sidelobe_floor_db)};
    }

    ScanSchedule build_scan_schedule(const BeamGridSet &grids)
    {
        for (Band b : kBands)
            if (grids.get(b, Side::Tx).band != b || grids.get(b, Side::Rx).band != b ||
                grids.get(b, Side::Tx).side != Side::Tx || grids.get(b, Side::Rx).side != Side::Rx)
                throw ConfigMismatch("beam grid set is not consistent with its band/side slots");

        const std::size_t n_tx24 = grids.tx24.size(), n_rx24 = grids.rx24.size();
        const std::size_t n_tx60 = grids.tx60.size(), n_rx60 = grids.rx60.size();
        const std::size_t pairs24 = n_tx24 * n_rx24;
        const std::size_t pairs60 = n_tx60 * n_rx60;
        if (pairs24 > pairs60)
            throw ConfigMismatch("24 GHz grid has more beam pairs than the 60 GHz grid drives");

        ScanSchedule s;
        s.n_blocks = pairs60;
        s.entries.reserve(2 * pairs60);
        for (std::size_t b = 0; b < pairs60; ++b)
        {
            ScanEntry e24{b, Band::B24, -1, -1, false};
            if (b < pairs24)
            {
                e24.tx_beam = static_cast<int>(b / n_rx24);
                e24.rx_beam = static_cast<int>(b % n_rx24);
                e24.active = true;
            }
            s.entries.push_back(e24);
            s.entries.push_back(ScanEntry{b, Band::B60, static_cast<int>(b / n_rx60), static_cast<int>(b % n_rx60), true});
        }
        return s;
    }

    std::string schedule_csv(const ScanSchedule &schedule)
    {
        std::ostringstream os;
        os << "block,band,tx_beam,rx_beam,active\n";
        for (const ScanEntry &e : schedule.entries)
            os << e.block_index << ',' << to_string(e.band) << ',' << e.tx_beam << ',' << e.rx_beam << ','
               << (e.active ? 1 : 0) << '\n';
        return os.str();
    }
}
