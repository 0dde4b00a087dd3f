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

#include "mmisac/registration.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "mmisac/errors.hpp"

namespace mmisac
{
    namespace
    {
        constexpr double kMinTriangleArea = 1e-9; // m^2

        // Largest triangle spanned by any three points; a cheap collinearity test for N >= 3.
        double max_triangle_area(std::span<const Point3> pts)
        {
            double best = 0.0;
            const std::size_t n = pts.size();
            // Anchor on the first point and the point farthest from it, then scan the rest.
            std::size_t far = 0;
            for (std::size_t i = 1; i < n; ++i)
                if ((pts[i] - pts[0]).squaredNorm() > (pts[far] - pts[0]).squaredNorm())
                    far = i;
            for (std::size_t i = 0; i < n; ++i)
                best = std::max(best, 0.5 * (pts[far] - pts[0]).cross(pts[i] - pts[0]).norm());
            return best;
        }
    }

    double MarkerTriple::triangle_area() const
    {
        return 0.5 * (points[1] - points[0]).cross(points[2] - points[0]).norm();
    }

    MarkerTriple calibration_square(double edge_x, double edge_y)
    {
        if (!(edge_x > 0.0) || !(edge_y > 0.0))
            throw ConfigError("calibration square edges must be positive");
        return MarkerTriple{{Point3(0, 0, 0), Point3(edge_x, 0, 0), Point3(0, edge_y, 0)}};
    }

    RigidTransform compose(const RigidTransform &a, const RigidTransform &b)
    {
        RigidTransform c;
        c.rotation = a.rotation * b.rotation;
        c.translation = a.rotation * b.translation + a.translation;
        return c;
    }

    RigidTransform inverse(const RigidTransform &t)
    {
        RigidTransform inv;
        inv.rotation = t.rotation.transpose();
        inv.translation = -(inv.rotation * t.translation);
        return inv;
    }

    RigidFit fit_rigid_transform(std::span<const Point3> local, std::span<const Point3> global)
    {
        if (local.size() != global.size())
            throw DegenerateConfiguration("marker counts differ between local and global sets");
        if (local.size() < 3)
            throw DegenerateConfiguration("at least three markers are required");
        if (max_triangle_area(local) < kMinTriangleArea || max_triangle_area(global) < kMinTriangleArea)
            throw DegenerateConfiguration("markers are collinear");

        const double n = static_cast<double>(local.size());
        Point3 c_local = Point3::Zero(), c_global = Point3::Zero();
        for (std::size_t i = 0; i < local.size(); ++i)
        {
            c_local += local[i];
            c_global += global[i];
        }
        c_local /= n;
        c_global /= n;

        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (std::size_t i = 0; i < local.size(); ++i)
            cov += (global[i] - c_global) * (local[i] - c_local).transpose();

        Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::Matrix3d &u = svd.matrixU();
        const Eigen::Matrix3d &v = svd.matrixV();
        Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
        if ((u * v.transpose()).determinant() < 0.0)
            d(2, 2) = -1.0; // singular values are sorted, so (2, 2) is the weakest direction

        RigidFit fit;
        fit.transform.rotation = u * d * v.transpose();
        fit.transform.translation = c_global - fit.transform.rotation * c_local;

        double sq = 0.0;
        for (std::size_t i = 0; i < local.size(); ++i)
            sq += (fit.transform(local[i]) - global[i]).squaredNorm();
        fit.residual_rms = std::sqrt(sq / n);
        return fit;
    }

    RigidFit fit_rigid_transform(const MarkerTriple &local, const MarkerTriple &global)
    {
        return fit_rigid_transform(std::span<const Point3>(local.points), std::span<const Point3>(global.points));
    }

    std::vector<Point3> apply_transform(const RigidTransform &t, std::span<const Point3> cloud)
    {
        std::vector<Point3> out;
        out.reserve(cloud.size());
        for (const Point3 &p : cloud)
            out.push_back(t(p));
        return out;
    }

    std::vector<Point3> merge_clouds(std::span<const std::pair<RigidTransform, std::vector<Point3>>> clouds)
    {
        std::vector<Point3> merged;
        for (const auto &[t, cloud] : clouds)
        {
            auto part = apply_transform(t, cloud);
            merged.insert(merged.end(), part.begin(), part.end());
        }
        return merged;
    }

    std::vector<Point3> read_xyz(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IOError("cannot open " + path.string());
        std::vector<Point3> cloud;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream is(line);
            double x, y, z;
            if (!(is >> x))
                continue;
            std::string rest;
            if (!(is >> y >> z) || (is >> rest))
                throw IOError(path.string() + ":" + std::to_string(line_no) + ": expected three numbers");
            cloud.emplace_back(x, y, z);
        }
        return cloud;
    }

    void write_xyz(const std::filesystem::path &path, std::span<const Point3> cloud)
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw IOError("cannot write " + path.string());
        out << std::setprecision(17);
        for (const Point3 &p : cloud)
            out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }

    RigidTransform read_transform(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IOError("cannot open " + path.string());
        std::string tag;
        in >> tag;
        if (tag != "rigid-transform/1")
            throw IOError(path.string() + ": missing rigid-transform/1 header");
        RigidTransform t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                in >> t.rotation(i, j);
        in >> t.translation.x() >> t.translation.y() >> t.translation.z();
        if (!in)
            throw IOError(path.string() + ": expected 12 numbers after the header");
        return t;
    }

    void write_transform(const std::filesystem::path &path, const RigidTransform &t)
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw IOError("cannot write " + path.string());
        out << "rigid-transform/1\n" << std::setprecision(17);
        for (int i = 0; i < 3; ++i)
            out << t.rotation(i, 0) << ' ' << t.rotation(i, 1) << ' ' << t.rotation(i, 2) << '\n';
        out << t.translation.x() << ' ' << t.translation.y() << ' ' << t.translation.z() << '\n';
    }
}
