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

#include <span>
#include <vector>

#include "mmisac/sounder.hpp"
#include "mmisac/tensor.hpp"

namespace mmisac
{
    inline constexpr double kDefaultThresholdDb = 30.0;
    inline constexpr double kHeatmapMaxDistance = 30.0; // m

    /// Row-major real matrix [rows][cols].
    struct PowerMatrix
    {
        std::size_t rows = 0, cols = 0;
        std::vector<double> data;

        PowerMatrix() = default;
        PowerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
        double &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
        double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    };

    // Summation order for every spectrum below: delay bins outer, then Rx beams, then Tx
    // beams, each ascending, accumulating |h|^2 in double into the output cell in that order.

    /// PDP[n_tau] = sum over all beam pairs of |h|^2.
    std::vector<double> compute_pdp(const CirTensor &cir);

    /// Angular-delay power spectrum [n_tau][beam] of one side (the other side is summed out).
    PowerMatrix compute_adps(const CirTensor &cir, Side side);

    /// Power angular profile of one side: sum over delay and the other side.
    std::vector<double> compute_pap(const CirTensor &cir, Side side);

    /*!
     * RMS delay spread of a PDP with bin width `delay_bin_width`.
     *
     * Only bins strictly above max(pdp) * 10^(-threshold_db/10) are kept, so a 0 dB threshold
     * removes everything and +inf keeps every positive bin. Throws EmptyProfile when nothing
     * survives, DomainError on negative or non-finite entries.
     */
    double compute_rms_ds(std::span<const double> pdp, double delay_bin_width, double threshold_db = kDefaultThresholdDb);

    /*!
     * Circular angular spread sqrt(-2 ln |sum_k P_k e^{j angle_k} / sum_k P_k|).
     *
     * The PAP acts as the weight and the beam angle sits in the exponent. Angles are taken
     * relative to the strongest beam before accumulating, which makes the one-beam case
     * exactly zero. Throws EmptyProfile on zero total power.
     */
    double compute_angular_spread(std::span<const double> pap, std::span<const double> angles);

    struct MetricSet
    {
        Band band = Band::B60;
        Link link = Link::Tx1Rx1;
        double delay_bin_width = 0.0;
        std::vector<double> pdp; // unthresholded
        double rms_ds = 0.0;     // s
        PowerMatrix adps_tx;     // [n_tau][n_phi_T]
        PowerMatrix adps_rx;     // [n_tau][n_phi_R]
        std::vector<double> pap_tx;
        std::vector<double> pap_rx;
        std::vector<double> tx_angles;
        std::vector<double> rx_angles;
        double asd = 0.0; // rad
        double asa = 0.0; // rad
        double threshold_db = kDefaultThresholdDb;
    };

    /// All spectra and dispersion metrics of one CIR. Angles are the grids' steering angles.
    MetricSet compute_metric_set(const CirTensor &cir, const BeamGrid &tx_grid, const BeamGrid &rx_grid,
                                 double threshold_db = kDefaultThresholdDb);

    struct DeltaMetrics
    {
        Band band = Band::B60;
        Link link = Link::Tx1Rx1;
        double delay_bin_width = 0.0;
        double d_rms_ds = 0.0; // s, with minus without
        double d_asd = 0.0;    // rad
        double d_asa = 0.0;    // rad
        PowerMatrix adps_delta_db_tx;
        PowerMatrix adps_delta_db_rx;
    };

    /*!
     * Differences "with person" minus "without person". The ADPS change is
     * 10 log10((A + eps) / (B + eps)) with eps = 1e-12 times the largest entry of either
     * spectrum, so positive values mean the person added power.
     * Throws ConfigMismatch on differing band, link, dimensions or threshold.
     */
    DeltaMetrics delta_metrics(const MetricSet &with_person, const MetricSet &without_person);

    /// Number of leading delay bins whose propagation distance c * tau stays within `max_distance`.
    std::size_t bins_within_distance(double delay_bin_width, std::size_t n_bins, double max_distance = kHeatmapMaxDistance);
}
