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

#include "mmisac/transform.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include <fftw3.h>

#include "mmisac/errors.hpp"

namespace mmisac
{
    namespace
    {
        // FFTW's planner is not thread safe; execution with the new-array interface is.
        // Plans are cached per (length, batch, direction). Buffers come from fftw_malloc so
        // the alignment, and hence the chosen codelets, never changes between calls.
        struct PlanKey
        {
            std::size_t n, batch;
            int sign;
            bool operator==(const PlanKey &) const = default;
        };

        struct PlanKeyHash
        {
            std::size_t operator()(const PlanKey &k) const noexcept
            {
                return (k.n * 1000003u) ^ (k.batch * 7919u) ^ static_cast<std::size_t>(k.sign + 2);
            }
        };

        class PlanCache
        {
        public:
            ~PlanCache()
            {
                for (auto &[key, plan] : plans_)
                    fftw_destroy_plan(plan);
            }

            fftw_plan get(std::size_t n, std::size_t batch, int sign)
            {
                std::lock_guard lock(mutex_);
                PlanKey key{n, batch, sign};
                if (auto it = plans_.find(key); it != plans_.end())
                    return it->second;

                auto *buf = fftw_alloc_complex(n * batch);
                int len = static_cast<int>(n);
                int stride = static_cast<int>(batch);
                fftw_plan p = fftw_plan_many_dft(1, &len, stride, buf, nullptr, stride, 1, buf, nullptr, stride, 1,
                                                 sign, FFTW_ESTIMATE);
                fftw_free(buf);
                plans_.emplace(key, p);
                return p;
            }

        private:
            std::mutex mutex_;
            std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plans_;
        };

        PlanCache &plan_cache()
        {
            static PlanCache cache;
            return cache;
        }

        struct FftwBuffer
        {
            explicit FftwBuffer(std::size_t n) : ptr(fftw_alloc_complex(n)) {}
            ~FftwBuffer() { fftw_free(ptr); }
            FftwBuffer(const FftwBuffer &) = delete;
            FftwBuffer &operator=(const FftwBuffer &) = delete;
            fftw_complex *ptr;
        };

        // In-place batched DFT along the bin axis of a cube; every beam pair is one transform.
        void transform_bins(ChannelCube &cube, int sign, double scale, const std::vector<double> *window)
        {
            const std::size_t n = cube.n_bins();
            const std::size_t batch = cube.n_beam_pairs();
            if (n == 0 || batch == 0)
                return;

            fftw_plan plan = plan_cache().get(n, batch, sign);
            FftwBuffer buf(n * batch);
            auto values = cube.values();
            for (std::size_t i = 0; i < n; ++i)
            {
                const double w = window ? (*window)[i] : 1.0;
                for (std::size_t b = 0; b < batch; ++b)
                {
                    const cdouble v = values[i * batch + b] * w;
                    buf.ptr[i * batch + b][0] = v.real();
                    buf.ptr[i * batch + b][1] = v.imag();
                }
            }
            fftw_execute_dft(plan, buf.ptr, buf.ptr);
            for (std::size_t k = 0; k < n * batch; ++k)
                values[k] = cdouble(buf.ptr[k][0], buf.ptr[k][1]) * scale;
        }
    }

    std::vector<double> window_coefficients(WindowKind window, std::size_t n)
    {
        std::vector<double> w(n, 1.0);
        if (window == WindowKind::Hann && n > 1)
        {
            // Periodic Hann has mean 0.5; the factor 2 restores unit coherent gain.
            for (std::size_t k = 0; k < n; ++k)
                w[k] = 1.0 - std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
        }
        return w;
    }

    CirTensor ctf_to_cir(const CtfTensor &ctf, const BandConfig &band, WindowKind window)
    {
        band.validate();
        if (ctf.band != band.band)
            throw ConfigMismatch("CTF is tagged " + std::string(to_string(ctf.band)) + " but the band config is " +
                                 std::string(to_string(band.band)));
        if (ctf.n_f() != band.n_tones)
            throw ConfigMismatch("CTF has " + std::to_string(ctf.n_f()) + " tones, band config expects " +
                                 std::to_string(band.n_tones));

        CirTensor cir;
        cir.band = ctf.band;
        cir.link = ctf.link;
        cir.delay_bin_width = band.delay_bin_width();
        cir.values = ctf.values;

        const std::vector<double> w = window_coefficients(window, ctf.n_f());
        transform_bins(cir.values, FFTW_BACKWARD, 1.0 / static_cast<double>(ctf.n_f()),
                       window == WindowKind::Rectangular ? nullptr : &w);
        return cir;
    }

    CtfTensor cir_to_ctf(const CirTensor &cir)
    {
        CtfTensor ctf;
        ctf.band = cir.band;
        ctf.link = cir.link;
        ctf.values = cir.values;
        transform_bins(ctf.values, FFTW_FORWARD, 1.0, nullptr);
        return ctf;
    }
}
