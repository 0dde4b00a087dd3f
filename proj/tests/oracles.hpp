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

// Reference implementations used as independent test oracles. They follow the
// textbook definitions directly and share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "mmisac/tensor.hpp"

namespace oracle
{
    using cd = std::complex<double>;

    // X[k] = sum_n x[n] exp(sign * j 2 pi k n / N), accumulated in long double.
    inline std::vector<cd> naive_dft(const std::vector<cd> &x, int sign)
    {
        const std::size_t n = x.size();
        std::vector<cd> out(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            long double re = 0.0L, im = 0.0L;
            for (std::size_t i = 0; i < n; ++i)
            {
                const long double arg =
                    sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((k * i) % n) / n;
                re += x[i].real() * std::cos(arg) - x[i].imag() * std::sin(arg);
                im += x[i].real() * std::sin(arg) + x[i].imag() * std::cos(arg);
            }
            out[k] = {static_cast<double>(re), static_cast<double>(im)};
        }
        return out;
    }

    inline mmisac::ChannelCube random_cube(std::mt19937_64 &rng, std::size_t n, std::size_t nr, std::size_t nt)
    {
        std::normal_distribution<double> g;
        mmisac::ChannelCube c(n, nr, nt);
        for (auto &v : c.values())
            v = {g(rng), g(rng)};
        return c;
    }

    inline double power(const cd &v) { return v.real() * v.real() + v.imag() * v.imag(); }

    // Spectra by explicit triple loops: bins, then Rx, then Tx.
    inline std::vector<double> pdp(const mmisac::ChannelCube &h)
    {
        std::vector<double> out(h.n_bins(), 0.0);
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    out[i] += power(h(i, r, t));
        return out;
    }

    inline std::vector<std::vector<double>> adps(const mmisac::ChannelCube &h, bool tx_side)
    {
        std::vector<std::vector<double>> out(h.n_bins(), std::vector<double>(tx_side ? h.n_tx() : h.n_rx(), 0.0));
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    out[i][tx_side ? t : r] += power(h(i, r, t));
        return out;
    }

    inline std::vector<double> pap(const mmisac::ChannelCube &h, bool tx_side)
    {
        std::vector<double> out(tx_side ? h.n_tx() : h.n_rx(), 0.0);
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    out[tx_side ? t : r] += power(h(i, r, t));
        return out;
    }

    // Second central moment of the kept bins in long double.
    inline double rms_ds(const std::vector<double> &p, double dt, double threshold_db)
    {
        const double peak = *std::max_element(p.begin(), p.end());
        const double floor = peak * std::pow(10.0, -threshold_db / 10.0);
        long double s0 = 0, s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > floor)
            {
                const long double tau = static_cast<long double>(i) * dt;
                s0 += p[i];
                s1 += p[i] * tau;
                s2 += p[i] * tau * tau;
            }
        const long double mean = s1 / s0;
        return static_cast<double>(std::sqrt(std::max(0.0L, s2 / s0 - mean * mean)));
    }

    inline double circular_spread(const std::vector<double> &p, const std::vector<double> &angles)
    {
        long double c = 0, s = 0, tot = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            c += p[i] * std::cos(static_cast<long double>(angles[i]));
            s += p[i] * std::sin(static_cast<long double>(angles[i]));
            tot += p[i];
        }
        const long double r = std::min(1.0L, std::sqrt(c * c + s * s) / tot);
        return static_cast<double>(std::sqrt(-2.0L * std::log(r)));
    }

    inline double sorted_median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
    }
}
