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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmisac
{
    // Broad failure classes. The CLI maps these onto its exit-code table.
    enum class ErrorKind
    {
        Config,
        IO,
        Numeric
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    /// Tensor dimensions or band/link tags disagree with the configuration they are used with.
    class ConfigMismatch : public Error
    {
    public:
        explicit ConfigMismatch(const std::string &what) : Error(ErrorKind::Config, what) {}
    };

    class ConfigError : public Error
    {
    public:
        explicit ConfigError(const std::string &what) : Error(ErrorKind::Config, what) {}
    };

    class GeometryError : public Error
    {
    public:
        explicit GeometryError(const std::string &what) : Error(ErrorKind::Config, what) {}
    };

    class DomainError : public Error
    {
    public:
        explicit DomainError(const std::string &what) : Error(ErrorKind::Numeric, what) {}
    };

    /// Nothing left to take moments of (all-zero profile, or everything cut by the threshold).
    class EmptyProfile : public Error
    {
    public:
        explicit EmptyProfile(const std::string &what) : Error(ErrorKind::Numeric, what) {}
    };

    class DegenerateConfiguration : public Error
    {
    public:
        explicit DegenerateConfiguration(const std::string &what) : Error(ErrorKind::Numeric, what) {}
    };

    class IOError : public Error
    {
    public:
        explicit IOError(const std::string &what) : Error(ErrorKind::IO, what) {}
    };

    /// Malformed text input. `offset()` is the zero-based byte position of the offending character.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &what, std::size_t offset)
            : Error(ErrorKind::Config, what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
        std::size_t offset() const noexcept { return offset_; }

    private:
        std::size_t offset_;
    };

    // Exit codes: 0 ok, 2 config, 3 IO, 4 numeric, 5 partial campaign failure.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitConfig = 2;
    inline constexpr int kExitIO = 3;
    inline constexpr int kExitNumeric = 4;
    inline constexpr int kExitPartial = 5;

    inline int exit_code(const Error &e) noexcept
    {
        switch (e.kind())
        {
        case ErrorKind::Config:
            return kExitConfig;
        case ErrorKind::IO:
            return kExitIO;
        case ErrorKind::Numeric:
            return kExitNumeric;
        }
        return kExitConfig;
    }
}
