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
#include <string>
#include <string_view>

#include "mmisac/scenario.hpp"
#include "mmisac/scene.hpp"

namespace mmisac
{
    inline constexpr std::string_view kSceneSchema = "scene/1";

    /// A scene configuration document: the scene itself plus the Loc1-Loc8 layout.
    struct SceneDocument
    {
        Scene scene;
        LocationMap locations;
    };

    /// The built-in default scene with its default location map.
    SceneDocument default_scene_document();

    /*!
     * Parse a "scene/1" JSON document. Keys absent from the document keep the values of
     * the default scene; "locations" defaults to the layout derived from the parsed sites.
     * Throws ConfigError on schema mismatch or malformed values.
     */
    SceneDocument parse_scene_document(std::string_view json_text);
    SceneDocument load_scene_document(const std::filesystem::path &path);

    /// Canonical serialization (sorted keys, fixed number formatting). Parsing it back
    /// gives an identical document.
    std::string scene_document_json(const SceneDocument &doc);
}
