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

#include "mmisac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "mmisac/errors.hpp"

namespace mmisac
{
    std::vector<double> compute_pdp(const CirTensor &cir)
    {
        const ChannelCube &h = cir.values;
        std::vector<double> pdp(h.n_bins(), 0.0);
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    pdp[i] += std::norm(h(i, r, t));
        return pdp;
    }

    PowerMatrix compute_adps(const CirTensor &cir, Side side)
    {
        const ChannelCube &h = cir.values;
        PowerMatrix adps(h.n_bins(), side == Side::Tx ? h.n_tx() : h.n_rx());
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    adps(i, side == Side::Tx ? t : r) += std::norm(h(i, r, t));
        return adps;
    }

    std::vector<double> compute_pap(const CirTensor &cir, Side side)
    {
        const ChannelCube &h = cir.values;
        std::vector<double> pap(side == Side::Tx ? h.n_tx() : h.n_rx(), 0.0);
        for (std::size_t i = 0; i < h.n_bins(); ++i)
            for (std::size_t r = 0; r < h.n_rx(); ++r)
                for (std::size_t t = 0; t < h.n_tx(); ++t)
                    pap[side == Side::Tx ? t : r] += std::norm(h(i, r, t));
        return pap;
    }

    double compute_rms_ds(std::span<const double> pdp, double delay_bin_width, double threshold_db)
    {
        if (!(delay_bin_width > 0.0))
            throw DomainError("delay bin width must be positive");
        if (std::isnan(threshold_db))
            throw DomainError("threshold must not be NaN");

        double peak = 0.0;
        for (double p : pdp)
        {
            if (!(p >= 0.0) || !std::isfinite(p))
                throw DomainError("PDP entries must be finite and non-negative");
            peak = std::max(peak, p);
        }
        const double cut = peak * std::pow(10.0, -threshold_db / 10.0);

        // Two passes: the mean delay first, then the central second moment.
        double total = 0.0, first = 0.0;
        for (std::size_t n = 0; n < pdp.size(); ++n)
            if (pdp[n] > cut)
            {
                total += pdp[n];
                first += static_cast<double>(n) * delay_bin_width * pdp[n];
            }
        if (!(total > 0.0))
            throw EmptyProfile("no PDP bin above the " + std::to_string(threshold_db) + " dB threshold");

        const double mean = first / total;
        double second = 0.0;
        for (std::size_t n = 0; n < pdp.size(); ++n)
            if (pdp[n] > cut)
            {
                const double d = static_cast<double>(n) * delay_bin_width - mean;
                second += d * d * pdp[n];
            }
        return std::sqrt(second / total);
    }

    double compute_angular_spread(std::span<const double> pap, std::span<const double> angles)
    {
        if (pap.size() != angles.size())
            throw ConfigMismatch("PAP and angle grid differ in length");

        double total = 0.0;
        std::size_t strongest = 0;
        for (std::size_t k = 0; k < pap.size(); ++k)
        {
            if (!(pap[k] >= 0.0) || !std::isfinite(pap[k]))
                throw DomainError("PAP entries must be finite and non-negative");
            total += pap[k];
            if (pap[k] > pap[strongest])
                strongest = k;
        }
        if (!(total > 0.0))
            throw EmptyProfile("PAP carries no power");

        std::complex<double> resultant(0.0, 0.0);
        for (std::size_t k = 0; k < pap.size(); ++k)
            if (pap[k] > 0.0)
                resultant += pap[k] * std::polar(1.0, angles[k] - angles[strongest]);

        const double r = std::min(1.0, std::abs(resultant) / total);
        return std::sqrt(std::max(0.0, -2.0 * std::log(r)));
    }

    MetricSet compute_metric_set(const CirTensor &cir, const BeamGrid &tx_grid, const BeamGrid &rx_grid, double threshold_db)
    {
        if (tx_grid.size() != cir.values.n_tx() || rx_grid.size() != cir.values.n_rx())
            throw ConfigMismatch("beam grids do not match the CIR beam dimensions");
        if (tx_grid.band != cir.band || rx_grid.band != cir.band)
            throw ConfigMismatch("beam grids belong to a different band than the CIR");

        MetricSet m;
        m.band = cir.band;
        m.link = cir.link;
        m.delay_bin_width = cir.delay_bin_width;
        m.threshold_db = threshold_db;
        m.pdp = compute_pdp(cir);
        m.adps_tx = compute_adps(cir, Side::Tx);
        m.adps_rx = compute_adps(cir, Side::Rx);
        m.pap_tx = compute_pap(cir, Side::Tx);
        m.pap_rx = compute_pap(cir, Side::Rx);
        m.tx_angles = tx_grid.steering_angles;
        m.rx_angles = rx_grid.steering_angles;
        m.rms_ds = compute_rms_ds(m.pdp, cir.delay_bin_width, threshold_db);
        m.asd = compute_angular_spread(m.pap_tx, m.tx_angles);
        m.asa = compute_angular_spread(m.pap_rx, m.rx_angles);
        return m;
    }

    namespace
    {
        PowerMatrix db_ratio(const PowerMatrix &a, const PowerMatrix &b)
        {
            double peak = 0.0;
            for (double v : a.data)
                peak = std::max(peak, v);
            for (double v : b.data)
                peak = std::max(peak, v);
            const double eps = peak > 0.0 ? 1e-12 * peak : std::numeric_limits<double>::min();

            PowerMatrix out(a.rows, a.cols);
            for (std::size_t k = 0; k < a.data.size(); ++k)
                out.data[k] = 10.0 * std::log10((a.data[k] + eps) / (b.data[k] + eps));
            return out;
        }
    }

    DeltaMetrics delta_metrics(const MetricSet &with_person, const MetricSet &without_person)
    {
        const MetricSet &a = with_person, &b = without_person;
        if (a.band != b.band || a.link != b.link)
            throw ConfigMismatch("delta_metrics: band or link differ");
        if (a.pdp.size() != b.pdp.size() || a.adps_tx.cols != b.adps_tx.cols || a.adps_rx.cols != b.adps_rx.cols ||
            a.adps_tx.rows != b.adps_tx.rows || a.adps_rx.rows != b.adps_rx.rows)
            throw ConfigMismatch("delta_metrics: spectrum dimensions differ");
        if (a.threshold_db != b.threshold_db)
            throw ConfigMismatch("delta_metrics: metric sets use different thresholds");
        if (a.delay_bin_width != b.delay_bin_width)
            throw ConfigMismatch("delta_metrics: delay bin widths differ");

        DeltaMetrics d;
        d.band = a.band;
        d.link = a.link;
        d.delay_bin_width = a.delay_bin_width;
        d.d_rms_ds = a.rms_ds - b.rms_ds;
        d.d_asd = a.asd - b.asd;
        d.d_asa = a.asa - b.asa;
        d.adps_delta_db_tx = db_ratio(a.adps_tx, b.adps_tx);
        d.adps_delta_db_rx = db_ratio(a.adps_rx, b.adps_rx);
        return d;
    }

    std::size_t bins_within_distance(double delay_bin_width, std::size_t n_bins, double max_distance)
    {
        std::size_t n = 0;
        while (n < n_bins && kSpeedOfLight * static_cast<double>(n) * delay_bin_width <= max_distance)
            ++n;
        return n;
    }
}
