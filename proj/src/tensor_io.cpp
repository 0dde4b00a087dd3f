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

#include "mmisac/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "mmisac/errors.hpp"

namespace mmisac
{
    namespace
    {
        static_assert(std::endian::native == std::endian::little, "tensor I/O assumes a little-endian host");

        constexpr std::size_t kHeaderSize = 16;

        template <typename T>
        void put(std::vector<char> &out, T value)
        {
            char raw[sizeof(T)];
            std::memcpy(raw, &value, sizeof(T));
            out.insert(out.end(), raw, raw + sizeof(T));
        }

        class Reader
        {
        public:
            explicit Reader(const std::vector<char> &bytes) : bytes_(bytes) {}

            template <typename T>
            T get()
            {
                if (pos_ + sizeof(T) > bytes_.size())
                    throw IOError("tensor file truncated at byte " + std::to_string(pos_));
                T value;
                std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
                pos_ += sizeof(T);
                return value;
            }

            std::size_t remaining() const { return bytes_.size() - pos_; }
            void skip(std::size_t n) { pos_ += n; }

        private:
            const std::vector<char> &bytes_;
            std::size_t pos_ = 0;
        };

        void put_header(std::vector<char> &out, const char *magic, Band band, Link link, const ChannelCube &c)
        {
            out.insert(out.end(), magic, magic + 4);
            put<std::uint32_t>(out, kTensorFormatVersion);
            out.insert(out.end(), 8, '\0');
            put<std::uint32_t>(out, static_cast<std::uint32_t>(band));
            put<std::uint32_t>(out, static_cast<std::uint32_t>(link));
            put<std::uint32_t>(out, static_cast<std::uint32_t>(c.n_bins()));
            put<std::uint32_t>(out, static_cast<std::uint32_t>(c.n_rx()));
            put<std::uint32_t>(out, static_cast<std::uint32_t>(c.n_tx()));
        }

        void put_values(std::vector<char> &out, const ChannelCube &c)
        {
            out.reserve(out.size() + c.size() * 8);
            for (const cdouble &v : c.values())
            {
                put<float>(out, static_cast<float>(v.real()));
                put<float>(out, static_cast<float>(v.imag()));
            }
        }

        struct Header
        {
            Band band;
            Link link;
            std::uint32_t n_bins, n_rx, n_tx;
        };

        Header get_header(Reader &r, const std::vector<char> &bytes, const char *magic)
        {
            if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), magic, 4) != 0)
                throw IOError(std::string("bad magic, expected ") + magic);
            r.skip(4);
            const auto version = r.get<std::uint32_t>();
            if (version != kTensorFormatVersion)
                throw IOError("unsupported tensor format version " + std::to_string(version));
            r.skip(8);
            Header h{};
            h.band = band_from_id(r.get<std::uint32_t>());
            h.link = link_from_id(r.get<std::uint32_t>());
            h.n_bins = r.get<std::uint32_t>();
            h.n_rx = r.get<std::uint32_t>();
            h.n_tx = r.get<std::uint32_t>();
            return h;
        }

        ChannelCube get_values(Reader &r, const Header &h)
        {
            const std::size_t count = std::size_t(h.n_bins) * h.n_rx * h.n_tx;
            if (r.remaining() != count * 8)
                throw IOError("tensor payload has " + std::to_string(r.remaining()) + " bytes, expected " +
                              std::to_string(count * 8));
            ChannelCube c(h.n_bins, h.n_rx, h.n_tx);
            for (cdouble &v : c.values())
            {
                const float re = r.get<float>();
                const float im = r.get<float>();
                v = cdouble(re, im);
            }
            if (!c.all_finite())
                throw IOError("tensor contains non-finite entries");
            return c;
        }

        std::vector<char> slurp(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw IOError("cannot open " + path.string());
            return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        }

        void dump(const std::filesystem::path &path, const std::vector<char> &bytes)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IOError("cannot write " + path.string());
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out)
                throw IOError("write failed for " + path.string());
        }

        template <typename Fn>
        auto with_path(const std::filesystem::path &path, Fn &&fn)
        {
            try
            {
                return fn();
            }
            catch (const Error &e)
            {
                throw IOError(path.string() + ": " + e.what());
            }
        }
    }

    std::vector<char> encode_ctf(const CtfTensor &t)
    {
        std::vector<char> out;
        put_header(out, "CTF1", t.band, t.link, t.values);
        put_values(out, t.values);
        return out;
    }

    std::vector<char> encode_cir(const CirTensor &t)
    {
        std::vector<char> out;
        put_header(out, "CIR1", t.band, t.link, t.values);
        put<double>(out, t.delay_bin_width);
        put_values(out, t.values);
        return out;
    }

    CtfTensor decode_ctf(const std::vector<char> &bytes)
    {
        Reader r(bytes);
        const Header h = get_header(r, bytes, "CTF1");
        CtfTensor t;
        t.band = h.band;
        t.link = h.link;
        t.values = get_values(r, h);
        return t;
    }

    CirTensor decode_cir(const std::vector<char> &bytes)
    {
        Reader r(bytes);
        const Header h = get_header(r, bytes, "CIR1");
        CirTensor t;
        t.band = h.band;
        t.link = h.link;
        t.delay_bin_width = r.get<double>();
        t.values = get_values(r, h);
        return t;
    }

    void write_ctf(const std::filesystem::path &path, const CtfTensor &t) { dump(path, encode_ctf(t)); }
    void write_cir(const std::filesystem::path &path, const CirTensor &t) { dump(path, encode_cir(t)); }

    CtfTensor read_ctf(const std::filesystem::path &path)
    {
        return with_path(path, [&]
                         { return decode_ctf(slurp(path)); });
    }

    CirTensor read_cir(const std::filesystem::path &path)
    {
        return with_path(path, [&]
                         { return decode_cir(slurp(path)); });
    }

    void quantize_complex64(ChannelCube &cube)
    {
        for (cdouble &v : cube.values())
            v = cdouble(static_cast<float>(v.real()), static_cast<float>(v.imag()));
    }
}
