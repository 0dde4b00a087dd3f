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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmisac/tensor.hpp"

// Binary tensor files.
//
//   offset  size  field
//   0       4     magic "CTF1" or "CIR1"
//   4       4     u32 format version (1)
//   8       8     reserved, zero
//   16      4     u32 band_id  (0 = 24 GHz, 1 = 60 GHz)
//   20      4     u32 link_id  (0 Tx1Rx1, 1 Tx1Rx2, 2 Tx2Rx1, 3 Tx2Rx2)
//   24      4     u32 N_f (or N_tau)
//   28      4     u32 N_phi_R
//   32      4     u32 N_phi_T
//   36      8     f64 delay_bin_width   (CIR1 only)
//   ...           complex64 entries, f32 real then f32 imaginary, in [bin][phi_R][phi_T] order
//
// All integers and floats are little-endian.

namespace mmisac
{
    inline constexpr std::uint32_t kTensorFormatVersion = 1;

    std::vector<char> encode_ctf(const CtfTensor &t);
    std::vector<char> encode_cir(const CirTensor &t);
    CtfTensor decode_ctf(const std::vector<char> &bytes);
    CirTensor decode_cir(const std::vector<char> &bytes);

    void write_ctf(const std::filesystem::path &path, const CtfTensor &t);
    void write_cir(const std::filesystem::path &path, const CirTensor &t);
    CtfTensor read_ctf(const std::filesystem::path &path);
    CirTensor read_cir(const std::filesystem::path &path);

    /// Round every entry through complex64, as a write/read cycle would.
    void quantize_complex64(ChannelCube &cube);
}
