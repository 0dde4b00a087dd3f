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

#include <random>

#include "mmisac/errors.hpp"
#include "mmisac/transform.hpp"
#include "oracles.hpp"

using namespace mmisac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    CtfTensor random_ctf(std::mt19937_64 &rng, const BandConfig &band, std::size_t nr, std::size_t nt)
    {
        return CtfTensor{band.band, Link::Tx1Rx2, oracle::random_cube(rng, band.n_tones, nr, nt)};
    }

    double total_power(const ChannelCube &c)
    {
        long double s = 0;
        for (const auto &v : c.values())
            s += std::norm(v);
        return static_cast<double>(s);
    }
}

TEST_CASE("inverse transform matches a naive DFT per beam pair")
{
    std::mt19937_64 rng(11);
    const BandConfig band = custom_band_config(Band::B60, 48, 48 * 390625.0);
    const CtfTensor ctf = random_ctf(rng, band, 3, 2);
    const CirTensor cir = ctf_to_cir(ctf, band);
    CHECK(cir.n_tau() == 48);
    CHECK_THAT(cir.delay_bin_width, WithinRel(1.0 / band.bandwidth, 1e-15));

    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t t = 0; t < 2; ++t)
        {
            std::vector<oracle::cd> column(48);
            for (std::size_t k = 0; k < 48; ++k)
                column[k] = ctf.values(k, r, t);
            const auto ref = oracle::naive_dft(column, +1);
            for (std::size_t n = 0; n < 48; ++n)
                CHECK(std::abs(cir.values(n, r, t) - ref[n] / 48.0) < 1e-13);
        }
}

TEST_CASE("round trip and Parseval at full band sizes")
{
    std::mt19937_64 rng(5);
    for (Band b : kBands)
    {
        const BandConfig band = band_config(b);
        const CtfTensor ctf = random_ctf(rng, band, 2, 3);
        const CirTensor cir = ctf_to_cir(ctf, band);
        const CtfTensor back = cir_to_ctf(cir);
        CHECK(back.band == b);
        CHECK(back.link == Link::Tx1Rx2);

        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < ctf.values.size(); ++i)
        {
            err = std::max(err, std::abs(back.values.values()[i] - ctf.values.values()[i]));
            ref = std::max(ref, std::abs(ctf.values.values()[i]));
        }
        CHECK(err / ref < 1e-10);
        const double ec = total_power(cir.values) * static_cast<double>(band.n_tones);
        CHECK_THAT(ec, WithinRel(total_power(ctf.values), 1e-10));
    }
}

TEST_CASE("an on-grid pure delay lands in a single bin")
{
    for (Band b : kBands)
    {
        const BandConfig band = band_config(b);
        const std::size_t m = 37;
        const double tau = static_cast<double>(m) * band.delay_bin_width();
        CtfTensor ctf{b, Link::Tx1Rx1, ChannelCube(band.n_tones, 1, 1)};
        for (std::size_t k = 0; k < band.n_tones; ++k)
            ctf.values(k, 0, 0) = std::polar(0.5, -2.0 * kPi * band.tone_offset(k) * tau);
        const CirTensor cir = ctf_to_cir(ctf, band);
        for (std::size_t n = 0; n < band.n_tones; ++n)
        {
            if (n == m)
                CHECK_THAT(std::abs(cir.values(n, 0, 0)), WithinAbs(0.5, 1e-12));
            else
                CHECK(std::abs(cir.values(n, 0, 0)) < 1e-12);
        }
    }
}

TEST_CASE("Hann window keeps on-grid amplitude and limits leakage")
{
    const auto w = window_coefficients(WindowKind::Hann, 16);
    double mean = 0.0;
    for (double x : w)
        mean += x / 16.0;
    CHECK_THAT(mean, WithinAbs(1.0, 1e-14));
    CHECK_THAT(w[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(w[8], WithinAbs(2.0, 1e-15));
    for (double x : window_coefficients(WindowKind::Rectangular, 8))
        CHECK(x == 1.0);

    const BandConfig band = band_config(Band::B24);
    const double tau = 20.5 * band.delay_bin_width(); // halfway between bins
    CtfTensor ctf{Band::B24, Link::Tx1Rx1, ChannelCube(band.n_tones, 1, 1)};
    for (std::size_t k = 0; k < band.n_tones; ++k)
        ctf.values(k, 0, 0) = std::polar(1.0, -2.0 * kPi * band.tone_offset(k) * tau);
    const CirTensor rect = ctf_to_cir(ctf, band);
    const CirTensor hann = ctf_to_cir(ctf, band, WindowKind::Hann);
    // 10 bins away the rectangular sidelobe is far stronger than the Hann one.
    CHECK(std::abs(hann.values(31, 0, 0)) < 0.01 * std::abs(rect.values(31, 0, 0)));
}

TEST_CASE("transform input validation")
{
    std::mt19937_64 rng(1);
    const BandConfig b60 = band_config(Band::B60);
    CtfTensor ctf = random_ctf(rng, b60, 1, 1);
    CHECK_THROWS_AS(ctf_to_cir(ctf, band_config(Band::B24)), ConfigMismatch);
    ctf.band = Band::B24;
    CHECK_THROWS_AS(ctf_to_cir(ctf, band_config(Band::B24)), ConfigMismatch);
}
