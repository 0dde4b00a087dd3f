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

#include "mmisac/band.hpp"
#include "mmisac/tensor.hpp"

namespace mmisac
{
    enum class WindowKind
    {
        Rectangular,
        Hann
    };

    /*!
     * Convert a CTF to a CIR by an inverse DFT along the tone axis of every beam pair.
     *
     * Transform convention: the forward DFT is unnormalized, the inverse carries 1/N, so
     * sum |h|^2 = sum |H|^2 / N_f for the rectangular window. The Hann window is the periodic
     * form scaled by its coherent gain (mean 1), so an on-grid tap keeps its amplitude.
     * The delay bin width is 1/bandwidth.
     *
     * Throws ConfigMismatch when the tensor's band or tone count differs from `band`.
     */
    CirTensor ctf_to_cir(const CtfTensor &ctf, const BandConfig &band, WindowKind window = WindowKind::Rectangular);

    /// Forward DFT per beam pair; exact inverse of ctf_to_cir with the rectangular window.
    CtfTensor cir_to_ctf(const CirTensor &cir);

    /// Window coefficients applied by ctf_to_cir.
    std::vector<double> window_coefficients(WindowKind window, std::size_t n);
}
