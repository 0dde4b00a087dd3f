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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include <Eigen/Geometry>

#include "mmisac/errors.hpp"
#include "mmisac/registration.hpp"

using namespace mmisac;
using Catch::Matchers::WithinAbs;

namespace
{
    RigidTransform random_transform(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g;
        const Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
        RigidTransform t;
        t.rotation = q.normalized().toRotationMatrix();
        t.translation = Eigen::Vector3d(g(rng), g(rng), g(rng)) * 3.0;
        return t;
    }

    std::filesystem::path scratch(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / "mmisac_test_registration";
        std::filesystem::create_directories(dir);
        return dir / name;
    }
}

TEST_CASE("calibration square markers")
{
    const MarkerTriple m = calibration_square(0.6, 0.4);
    CHECK(m.points[0] == Point3(0.0, 0.0, 0.0));
    CHECK(m.points[1] == Point3(0.6, 0.0, 0.0));
    CHECK(m.points[2] == Point3(0.0, 0.4, 0.0));
    CHECK_THAT(m.triangle_area(), WithinAbs(0.12, 1e-15));
}

TEST_CASE("exact triples recover the transform")
{
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial)
    {
        const RigidTransform truth = random_transform(rng);
        MarkerTriple local;
        for (Point3 &p : local.points)
            p = Point3(g(rng), g(rng), g(rng));
        MarkerTriple global;
        for (int i = 0; i < 3; ++i)
            global.points[i] = truth(local.points[i]);
        const RigidFit fit = fit_rigid_transform(local, global);
        CHECK((fit.transform.rotation - truth.rotation).norm() < 1e-9);
        CHECK((fit.transform.translation - truth.translation).norm() < 1e-9);
        CHECK(fit.residual_rms < 1e-9);
        CHECK_THAT(fit.transform.rotation.determinant(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("mirrored correspondences still give a proper rotation")
{
    // A planar set mirrored through z: the unconstrained optimum is a reflection.
    const std::vector<Point3> local{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0.5}};
    std::vector<Point3> global;
    for (const Point3 &p : local)
        global.emplace_back(p.x(), p.y(), -p.z());
    const RigidFit fit = fit_rigid_transform(local, global);
    CHECK_THAT(fit.transform.rotation.determinant(), WithinAbs(1.0, 1e-12));
    CHECK(fit.residual_rms > 0.0);
}

TEST_CASE("degenerate marker sets")
{
    const std::vector<Point3> two{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(fit_rigid_transform(two, two), DegenerateConfiguration);
    const std::vector<Point3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(fit_rigid_transform(line, line), DegenerateConfiguration);
    const std::vector<Point3> three{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    CHECK_THROWS_AS(fit_rigid_transform(three, line), DegenerateConfiguration);
    const std::vector<Point3> four{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(fit_rigid_transform(three, four), DegenerateConfiguration);
}

TEST_CASE("compose, inverse and merge")
{
    std::mt19937_64 rng(12);
    const RigidTransform a = random_transform(rng), b = random_transform(rng);
    const Point3 p(0.3, -1.2, 2.0);
    CHECK((compose(a, b)(p) - a(b(p))).norm() < 1e-12);
    CHECK((inverse(a)(a(p)) - p).norm() < 1e-12);

    const std::vector<Point3> c1{{0, 0, 0}, {1, 2, 3}};
    const std::vector<Point3> c2{{5, 5, 5}};
    const std::vector<std::pair<RigidTransform, std::vector<Point3>>> clouds{{a, c1}, {b, c2}};
    const auto merged = merge_clouds(clouds);
    REQUIRE(merged.size() == 3);
    CHECK((merged[1] - a(c1[1])).norm() < 1e-15);
    CHECK((merged[2] - b(c2[0])).norm() < 1e-15);
}

TEST_CASE("file formats")
{
    std::mt19937_64 rng(13);
    const RigidTransform t = random_transform(rng);
    write_transform(scratch("t.txt"), t);
    const RigidTransform back = read_transform(scratch("t.txt"));
    CHECK((back.rotation - t.rotation).norm() == 0.0);
    CHECK((back.translation - t.translation).norm() == 0.0);

    {
        std::ofstream out(scratch("c.xyz"));
        out << "# markers\n0 0 0\n\n1.5 2 -3 \n";
    }
    const auto pts = read_xyz(scratch("c.xyz"));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1] == Point3(1.5, 2.0, -3.0));
    write_xyz(scratch("d.xyz"), pts);
    CHECK(read_xyz(scratch("d.xyz")) == pts);

    {
        std::ofstream out(scratch("bad.xyz"));
        out << "1 2\n";
    }
    CHECK_THROWS_AS(read_xyz(scratch("bad.xyz")), IOError);
    {
        std::ofstream out(scratch("bad.txt"));
        out << "rigid-transform/2\n";
    }
    CHECK_THROWS_AS(read_transform(scratch("bad.txt")), IOError);
}
