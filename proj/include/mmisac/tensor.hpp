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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mmisac/types.hpp"

namespace mmisac
{
    using cdouble = std::complex<double>;

    /// Dense row-major complex cube indexed [i][r][t], where i is the tone or delay bin,
    /// r the Rx beam and t the Tx beam.
    class ChannelCube
    {
    public:
        ChannelCube() = default;
        ChannelCube(std::size_t n_bins, std::size_t n_rx, std::size_t n_tx)
            : n_bins_(n_bins), n_rx_(n_rx), n_tx_(n_tx), data_(n_bins * n_rx * n_tx) {}

        std::size_t n_bins() const { return n_bins_; }
        std::size_t n_rx() const { return n_rx_; }
        std::size_t n_tx() const { return n_tx_; }
        std::size_t size() const { return data_.size(); }
        std::size_t n_beam_pairs() const { return n_rx_ * n_tx_; }

        cdouble &operator()(std::size_t i, std::size_t r, std::size_t t) { return data_[(i * n_rx_ + r) * n_tx_ + t]; }
        const cdouble &operator()(std::size_t i, std::size_t r, std::size_t t) const { return data_[(i * n_rx_ + r) * n_tx_ + t]; }

        std::span<cdouble> values() { return data_; }
        std::span<const cdouble> values() const { return data_; }

        bool same_shape(const ChannelCube &o) const { return n_bins_ == o.n_bins_ && n_rx_ == o.n_rx_ && n_tx_ == o.n_tx_; }
        bool all_finite() const;

    private:
        std::size_t n_bins_ = 0, n_rx_ = 0, n_tx_ = 0;
        std::vector<cdouble> data_;
    };

    /// Channel transfer function of one link in one band: [tone][rx beam][tx beam].
    struct CtfTensor
    {
        Band band = Band::B60;
        Link link = Link::Tx1Rx1;
        ChannelCube values;

        std::size_t n_f() const { return values.n_bins(); }
    };

    /// Channel impulse response: [delay bin][rx beam][tx beam].
    struct CirTensor
    {
        Band band = Band::B60;
        Link link = Link::Tx1Rx1;
        ChannelCube values;
        double delay_bin_width = 0.0; // s

        std::size_t n_tau() const { return values.n_bins(); }
    };
}
