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

#include "mmisac/types.hpp"

namespace mmisac
{
    /// Radius of the first Fresnel zone at a point d1 from one end and d2 from the other.
    /// Throws DomainError unless d1, d2 and wavelength are positive.
    double first_fresnel_radius(double d1, double d2, double wavelength);

    /*!
     * True when p lies strictly inside the first Fresnel ellipsoid of the tx-rx segment:
     * the foot of the perpendicular from p must fall strictly between the endpoints and
     * the perpendicular distance must be smaller than the zone radius at that foot.
     */
    bool point_in_first_fresnel(const Point3 &tx, const Point3 &rx, const Point3 &p, double wavelength);
}
