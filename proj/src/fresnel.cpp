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

#include "mmisac/fresnel.hpp"

#include <cmath>

#include "mmisac/errors.hpp"

namespace mmisac
{
    double first_fresnel_radius(double d1, double d2, double wavelength)
    {
        if (!(d1 > 0.0) || !(d2 > 0.0) || !(wavelength > 0.0))
            throw DomainError("first_fresnel_radius: distances and wavelength must be positive");
        return std::sqrt(wavelength * d1 * d2 / (d1 + d2));
    }

    bool point_in_first_fresnel(const Point3 &tx, const Point3 &rx, const Point3 &p, double wavelength)
    {
        const Point3 axis = rx - tx;
        const double length = axis.norm();
        if (length == 0.0)
            throw GeometryError("point_in_first_fresnel: tx and rx coincide");

        const Point3 dir = axis / length;
        const double d1 = (p - tx).dot(dir);
        const double d2 = length - d1;
        if (d1 <= 0.0 || d2 <= 0.0)
            return false;

        const double lateral = (p - (tx + d1 * dir)).norm();
        return lateral < first_fresnel_radius(d1, d2, wavelength);
    }
}
