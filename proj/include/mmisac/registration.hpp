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

#include <array>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mmisac/types.hpp"

namespace mmisac
{
    /// Centers of the three marker spheres of the calibration square, by marker index.
    struct MarkerTriple
    {
        std::array<Point3, 3> points;

        double triangle_area() const;
    };

    /// Marker positions of a calibration square with the given edge lengths: the corner at
    /// the origin, one corner along +x and one along +y.
    MarkerTriple calibration_square(double edge_x, double edge_y);

    struct RigidTransform
    {
        Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
        Eigen::Vector3d translation = Eigen::Vector3d::Zero();

        Point3 operator()(const Point3 &p) const { return rotation * p + translation; }
        static RigidTransform identity() { return {}; }
    };

    /// this-after-that: compose(a, b)(p) == a(b(p))
    RigidTransform compose(const RigidTransform &a, const RigidTransform &b);
    RigidTransform inverse(const RigidTransform &t);

    struct RigidFit
    {
        RigidTransform transform;
        double residual_rms = 0.0; // m
    };

    /*!
     * Least-squares rigid transform taking `local` onto `global` (correspondence by index):
     * centroid alignment and an SVD of the cross-covariance, with the sign of the weakest
     * singular direction flipped when the unconstrained optimum is a reflection.
     * Throws DegenerateConfiguration for fewer than three points, mismatched counts, or
     * (near-)collinear markers.
     */
    RigidFit fit_rigid_transform(std::span<const Point3> local, std::span<const Point3> global);
    RigidFit fit_rigid_transform(const MarkerTriple &local, const MarkerTriple &global);

    std::vector<Point3> apply_transform(const RigidTransform &t, std::span<const Point3> cloud);

    /// Concatenate the transformed clouds in input order.
    std::vector<Point3> merge_clouds(std::span<const std::pair<RigidTransform, std::vector<Point3>>> clouds);

    // ASCII XYZ: one "x y z" triple per line in metres; blank lines and '#' comments are skipped.
    std::vector<Point3> read_xyz(const std::filesystem::path &path);
    void write_xyz(const std::filesystem::path &path, std::span<const Point3> cloud);

    // Transform record: a "rigid-transform/1" line followed by the 12 numbers
    // R00 R01 R02 R10 R11 R12 R20 R21 R22 tx ty tz, whitespace separated.
    RigidTransform read_transform(const std::filesystem::path &path);
    void write_transform(const std::filesystem::path &path, const RigidTransform &t);
}
