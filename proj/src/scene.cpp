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

#include "mmisac/scene.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <limits>
#include <optional>
#include <set>

#include "mmisac/errors.hpp"
#include "mmisac/fresnel.hpp"

namespace mmisac
{
    namespace
    {
        constexpr double kPlaneTolerance = 1e-9;
        constexpr double kCoverTolerance = 1e-9;
        constexpr std::size_t kRoomFaces = 6;

        std::pair<int, int> in_plane_axes(int normal_axis)
        {
            switch (normal_axis)
            {
            case 0:
                return {1, 2};
            case 1:
                return {0, 2};
            default:
                return {0, 1};
            }
        }

        Eigen::Vector2d horizontal(const Point3 &p) { return {p.x(), p.y()}; }

        double cross2(const Eigen::Vector2d &a, const Eigen::Vector2d &b) { return a.x() * b.y() - a.y() * b.x(); }

        // Point where segment a-b meets the reflector plane, if it crosses strictly.
        std::optional<Point3> plane_crossing(const Reflector &r, const Point3 &a, const Point3 &b)
        {
            const double da = r.signed_distance(a);
            const double db = r.signed_distance(b);
            if (!(da * db < 0.0))
                return std::nullopt;
            const double t = da / (da - db);
            return a + t * (b - a);
        }

        // Specular chain through `sequence`; empty optional when the geometry admits no such path.
        std::optional<std::vector<Point3>> trace_images(const std::vector<Reflector> &reflectors,
                                                        const std::vector<int> &sequence, const Point3 &tx, const Point3 &rx)
        {
            const std::size_t n = sequence.size();
            std::vector<Point3> images(n + 1);
            images[0] = tx;
            for (std::size_t k = 0; k < n; ++k)
                images[k + 1] = reflectors[sequence[k]].mirror(images[k]);

            std::vector<Point3> points(n + 2);
            points[0] = tx;
            points[n + 1] = rx;
            Point3 target = rx;
            for (std::size_t k = n; k >= 1; --k)
            {
                const Reflector &r = reflectors[sequence[k - 1]];
                // The previous image and the point we travel toward must sit on the same side.
                if (!(r.signed_distance(images[k - 1]) * r.signed_distance(target) > 0.0))
                    return std::nullopt;
                auto hit = plane_crossing(r, images[k], target);
                if (!hit || !r.covers(*hit))
                    return std::nullopt;
                points[k] = *hit;
                target = *hit;
            }
            for (std::size_t k = 0; k + 1 < points.size(); ++k)
                if ((points[k + 1] - points[k]).norm() < kPlaneTolerance)
                    return std::nullopt;
            return points;
        }

        // A leg is occluded when it crosses a panel it does not start or end on.
        bool occluded(const std::vector<Reflector> &reflectors, const std::vector<Point3> &vertices,
                      const std::vector<int> &bounce_reflector)
        {
            for (std::size_t leg = 0; leg + 1 < vertices.size(); ++leg)
            {
                for (std::size_t i = kRoomFaces; i < reflectors.size(); ++i)
                {
                    const int idx = static_cast<int>(i);
                    const bool starts_on = leg >= 1 && bounce_reflector[leg - 1] == idx;
                    const bool ends_on = leg + 1 < vertices.size() - 1 && bounce_reflector[leg] == idx;
                    if (starts_on || ends_on)
                        continue;
                    auto hit = plane_crossing(reflectors[i], vertices[leg], vertices[leg + 1]);
                    if (hit && reflectors[i].covers(*hit))
                        return true;
                }
            }
            return false;
        }

        void fill_geometry(PropagationPath &p)
        {
            p.length = 0.0;
            for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k)
                p.length += (p.vertices[k + 1] - p.vertices[k]).norm();
            p.delay = p.length / kSpeedOfLight;

            const Point3 dep = p.vertices[1] - p.vertices[0];
            const Point3 arr = p.vertices[p.vertices.size() - 2] - p.vertices.back();
            p.azimuth_departure = azimuth_of(dep);
            p.elevation_departure = elevation_of(dep);
            p.azimuth_arrival = azimuth_of(arr);
            p.elevation_arrival = elevation_of(arr);
        }

        void enumerate_sequences(std::size_t n_reflectors, int max_order, std::vector<int> &current,
                                 std::vector<std::vector<int>> &out)
        {
            if (!current.empty())
                out.push_back(current);
            if (static_cast<int>(current.size()) == max_order)
                return;
            for (std::size_t i = 0; i < n_reflectors; ++i)
            {
                if (!current.empty() && current.back() == static_cast<int>(i))
                    continue;
                current.push_back(static_cast<int>(i));
                enumerate_sequences(n_reflectors, max_order, current, out);
                current.pop_back();
            }
        }

        double leg_attenuation(const Point3 &a, const Point3 &b, const Person &person, double wavelength,
                               const HumanModel &model)
        {
            const Eigen::Vector2d c = horizontal(person.center);
            auto inside_body = [&](const Point3 &e)
            {
                return (horizontal(e) - c).norm() < person.cylinder_radius && e.z() >= person.center.z() &&
                       e.z() <= person.center.z() + person.height;
            };
            if (inside_body(a) || inside_body(b))
                return 0.0;

            const Eigen::Vector2d a2 = horizontal(a);
            const Eigen::Vector2d dir = horizontal(b) - a2;
            const double len2 = dir.squaredNorm();
            if (len2 < 1e-18)
                return 1.0;

            const double t = (c - a2).dot(dir) / len2;
            if (t <= 0.0 || t >= 1.0)
                return 1.0;
            const double z = a.z() + t * (b.z() - a.z());
            if (z < person.center.z() || z > person.center.z() + person.height)
                return 1.0;

            const double total = (b - a).norm();
            const double d1 = t * total;
            const double d2 = (1.0 - t) * total;
            const Eigen::Vector2d unit = dir / std::sqrt(len2);
            const double lateral = std::abs(cross2(unit, c - a2));
            const double half_width = silhouette_half_width(person, std::atan2(unit.y(), unit.x()), model);
            const double penetration = half_width - lateral;

            if (-penetration > model.clearance_fresnel_radii * first_fresnel_radius(d1, d2, wavelength))
                return 1.0;

            const double v = penetration * std::sqrt(2.0 * (d1 + d2) / (wavelength * d1 * d2));
            const double loss_db = 2.0 * knife_edge_loss_db(v);
            return std::pow(10.0, -loss_db / 20.0);
        }

        std::uint64_t noise_seed_word(Link link, Band band)
        {
            return (static_cast<std::uint64_t>(link) << 8) | static_cast<std::uint64_t>(band);
        }
    }

    bool Reflector::covers(const Point3 &p) const
    {
        const auto [ua, va] = in_plane_axes(normal_axis);
        return p[ua] >= u_min - kCoverTolerance && p[ua] <= u_max + kCoverTolerance && p[va] >= v_min - kCoverTolerance &&
               p[va] <= v_max + kCoverTolerance;
    }

    Point3 Reflector::mirror(const Point3 &p) const
    {
        Point3 m = p;
        m[normal_axis] = 2.0 * offset - p[normal_axis];
        return m;
    }

    bool Room::contains(const Point3 &p) const
    {
        return (p.array() > min_corner.array()).all() && (p.array() < max_corner.array()).all();
    }

    std::vector<Reflector> Room::faces() const
    {
        const Point3 &lo = min_corner, &hi = max_corner;
        return {
            Reflector{"wall x-", 0, lo.x(), lo.y(), hi.y(), lo.z(), hi.z(), wall_reflection},
            Reflector{"wall x+", 0, hi.x(), lo.y(), hi.y(), lo.z(), hi.z(), wall_reflection},
            Reflector{"wall y-", 1, lo.y(), lo.x(), hi.x(), lo.z(), hi.z(), wall_reflection},
            Reflector{"wall y+", 1, hi.y(), lo.x(), hi.x(), lo.z(), hi.z(), wall_reflection},
            Reflector{"floor", 2, lo.z(), lo.x(), hi.x(), lo.y(), hi.y(), floor_reflection},
            Reflector{"ceiling", 2, hi.z(), lo.x(), hi.x(), lo.y(), hi.y(), ceiling_reflection},
        };
    }

    void Scene::validate() const
    {
        if (!((room.max_corner.array() > room.min_corner.array()).all()))
            throw ConfigError("room: max corner must exceed min corner on every axis");
        if (max_reflection_order < 0 || max_reflection_order > 2)
            throw ConfigError("max_reflection_order must be 0, 1 or 2");
        if (std::isnan(noise_floor_db) || noise_floor_db == std::numeric_limits<double>::infinity())
            throw ConfigError("noise_floor_db must be finite or -inf");

        for (const Reflector &r : panels)
        {
            if (r.normal_axis < 0 || r.normal_axis > 2 || !(r.u_max > r.u_min) || !(r.v_max > r.v_min))
                throw ConfigError("panel '" + r.name + "': bad axis or extent");
            for (Band b : kBands)
                if (!(std::abs(r.reflection[b]) <= 1.0))
                    throw ConfigError("panel '" + r.name + "': reflection coefficient must lie in [-1, 1]");
        }

        std::vector<const Site *> sites{&tx[0], &tx[1], &rx[0], &rx[1]};
        for (const Site *s : sites)
            for (Band b : kBands)
                if (!room.contains(s->position[b]))
                    throw ConfigError("site " + s->name + " (" + std::string(to_string(b)) + ") is outside the room");

        std::set<char> labels;
        for (const Person &p : persons)
        {
            if (!labels.insert(p.label).second)
                throw ConfigError(std::string("duplicate person label ") + p.label);
            if (!(p.cylinder_radius > 0.0) || !(p.height > 0.0))
                throw ConfigError(std::string("person ") + p.label + ": radius and height must be positive");
            if (!room.contains(p.center + Point3(0, 0, 1e-6)))
                throw ConfigError(std::string("person ") + p.label + " stands outside the room");
            for (const Site *s : sites)
                for (Band b : kBands)
                {
                    const Point3 &q = s->position[b];
                    const double dh = std::hypot(q.x() - p.center.x(), q.y() - p.center.y());
                    if (dh < p.cylinder_radius && q.z() <= p.center.z() + p.height)
                        throw ConfigError(std::string("person ") + p.label + " overlaps site " + s->name);
                }
        }
    }

    Scene default_scene()
    {
        Scene s;
        s.room.min_corner = {0.0, 0.0, 0.0};
        s.room.max_corner = {5.4, 5.8, 2.8};

        // 60 GHz arrays at 1.0 m, the 24 GHz arrays stacked 0.12 m above them.
        constexpr double z60 = 1.0, z24 = 1.12;
        auto site = [&](const char *name, double x, double y)
        {
            Site st;
            st.name = name;
            st.position.b60 = {x, y, z60};
            st.position.b24 = {x, y, z24};
            return st;
        };
        // The crossing links are 3 delay bins (24 GHz) long, so their LOS tap is on the grid.
        constexpr double x_tx = 1.2, x_rx = 3.85, y_far = 4.95;
        const double los = 3.0 * kSpeedOfLight * 5e-9;
        const double y_near = y_far - std::sqrt(los * los - (x_rx - x_tx) * (x_rx - x_tx));
        s.tx[0] = site("Tx1", x_tx, y_far);
        s.tx[1] = site("Tx2", x_tx, y_near);
        s.rx[0] = site("Rx1", x_rx, y_far);
        s.rx[1] = site("Rx2", x_rx, y_near);

        // Tx1 faces Rx2, Tx2 faces Rx1 (and vice versa); the two LOS links cross mid-room.
        s.tx[0].boresight_azimuth = azimuth_of(s.rx[1].position.b60 - s.tx[0].position.b60);
        s.rx[1].boresight_azimuth = azimuth_of(s.tx[0].position.b60 - s.rx[1].position.b60);
        s.tx[1].boresight_azimuth = azimuth_of(s.rx[0].position.b60 - s.tx[1].position.b60);
        s.rx[0].boresight_azimuth = azimuth_of(s.tx[1].position.b60 - s.rx[0].position.b60);

        s.panels.push_back(Reflector{"metal cabinet", 1, 5.75, 2.0, 3.4, 0.0, 1.9, {0.9, 0.9}});
        s.panels.push_back(Reflector{"whiteboard", 1, 0.02, 1.6, 3.0, 0.8, 2.0, {0.7, 0.7}});
        return s;
    }

    double knife_edge_loss_db(double v)
    {
        if (v <= -0.78)
            return 0.0;
        const double w = v - 0.1;
        return std::max(0.0, 6.9 + 20.0 * std::log10(std::sqrt(w * w + 1.0) + w));
    }

    double silhouette_half_width(const Person &person, double path_azimuth, const HumanModel &model)
    {
        return person.cylinder_radius *
               (model.width_min + model.width_span * std::abs(std::cos(person.facing_azimuth - path_azimuth)));
    }

    double blockage_attenuation(std::span<const Point3> polyline, const Person &person, double wavelength,
                                const HumanModel &model)
    {
        if (!(wavelength > 0.0))
            throw DomainError("blockage_attenuation: wavelength must be positive");
        double factor = 1.0;
        for (std::size_t k = 0; k + 1 < polyline.size() && factor > 0.0; ++k)
            factor *= leg_attenuation(polyline[k], polyline[k + 1], person, wavelength, model);
        return factor;
    }

    double scatter_cross_section(const Person &person, double incident_azimuth, double scattered_azimuth,
                                 const HumanModel &model)
    {
        const Eigen::Vector2d bisector(std::cos(incident_azimuth) + std::cos(scattered_azimuth),
                                       std::sin(incident_azimuth) + std::sin(scattered_azimuth));
        double cos_beta = 0.0;
        if (bisector.norm() > 1e-9)
        {
            const Eigen::Vector2d facing(std::cos(person.facing_azimuth), std::sin(person.facing_azimuth));
            cos_beta = facing.dot(bisector) / bisector.norm();
        }
        return model.sigma_max * std::pow(std::max(0.0, cos_beta), model.lobe_exponent) + model.sigma_floor;
    }

    cdouble human_scatter_amplitude(const Person &person, double incident_azimuth, double scattered_azimuth,
                                    double d_tx, double d_rx, double wavelength, const HumanModel &model)
    {
        if (!(d_tx > 0.0) || !(d_rx > 0.0) || !(wavelength > 0.0))
            throw DomainError("human_scatter_amplitude: distances and wavelength must be positive");
        const double sigma = scatter_cross_section(person, incident_azimuth, scattered_azimuth, model);
        return {std::sqrt(sigma / (4.0 * kPi)) * wavelength / (4.0 * kPi * d_tx * d_rx), 0.0};
    }

    std::vector<PropagationPath> enumerate_paths(const Scene &scene, Link link, const BandConfig &band)
    {
        scene.validate();
        band.validate();
        const Band b = band.band;
        const double lambda = band.wavelength();
        const Point3 tx = scene.tx_site(link).position[b];
        const Point3 rx = scene.rx_site(link).position[b];
        if ((tx - rx).norm() < kPlaneTolerance)
            throw GeometryError("tx and rx of " + std::string(to_string(link)) + " coincide");

        std::vector<Reflector> reflectors = scene.room.faces();
        reflectors.insert(reflectors.end(), scene.panels.begin(), scene.panels.end());
        for (const Reflector &r : reflectors)
            if (std::abs(r.signed_distance(tx)) < kPlaneTolerance || std::abs(r.signed_distance(rx)) < kPlaneTolerance)
                throw GeometryError("a site of " + std::string(to_string(link)) + " lies on reflector '" + r.name +
                                    "' and coincides with its image");

        std::vector<PropagationPath> paths;

        // LOS and specular images
        std::vector<std::vector<int>> sequences{{}};
        std::vector<int> scratch;
        enumerate_sequences(reflectors.size(), scene.max_reflection_order, scratch, sequences);
        for (const std::vector<int> &seq : sequences)
        {
            auto points = trace_images(reflectors, seq, tx, rx);
            if (!points || occluded(reflectors, *points, seq))
                continue;
            PropagationPath p;
            p.kind = seq.empty() ? PathKind::LOS : PathKind::Reflection;
            p.order = static_cast<int>(seq.size());
            p.vertices = std::move(*points);
            p.interactions = seq;
            fill_geometry(p);
            double gain = lambda / (4.0 * kPi * p.length);
            for (int idx : seq)
                gain *= reflectors[idx].reflection[b];
            p.amplitude = gain;
            p.unobstructed_gain = std::abs(gain);
            paths.push_back(std::move(p));
        }

        // One torso scatter path per person
        for (std::size_t i = 0; i < scene.persons.size(); ++i)
        {
            const Person &person = scene.persons[i];
            const Point3 torso(person.center.x(), person.center.y(), person.center.z() + scene.human.torso_height);
            PropagationPath p;
            p.kind = PathKind::HumanScatter;
            p.vertices = {tx, torso, rx};
            p.interactions = {static_cast<int>(i)};
            if (occluded(reflectors, p.vertices, {-1}))
                continue;
            fill_geometry(p);
            p.amplitude = human_scatter_amplitude(person, azimuth_of(tx - torso), azimuth_of(rx - torso),
                                                  (torso - tx).norm(), (rx - torso).norm(), lambda, scene.human);
            p.unobstructed_gain = std::abs(p.amplitude);
            paths.push_back(std::move(p));
        }

        for (PropagationPath &p : paths)
            for (std::size_t i = 0; i < scene.persons.size(); ++i)
            {
                if (p.kind == PathKind::HumanScatter && p.interactions.front() == static_cast<int>(i))
                    continue;
                p.amplitude *= blockage_attenuation(p.vertices, scene.persons[i], lambda, scene.human);
            }
        return paths;
    }

    CtfTensor ctf_from_paths(std::span<const PropagationPath> paths, const Scene &scene, Link link, const BandConfig &band,
                             const BeamGridSet &grids, const SynthesisOptions &opts)
    {
        band.validate();
        const BeamGrid &tx_grid = grids.get(band.band, Side::Tx);
        const BeamGrid &rx_grid = grids.get(band.band, Side::Rx);
        if (tx_grid.band != band.band || rx_grid.band != band.band)
            throw ConfigMismatch("beam grids do not belong to band " + std::string(to_string(band.band)));

        const std::size_t nf = band.n_tones, nr = rx_grid.size(), nt = tx_grid.size();
        CtfTensor ctf;
        ctf.band = band.band;
        ctf.link = link;
        ctf.values = ChannelCube(nf, nr, nt);

        const double tx_bore = scene.tx_site(link).boresight_azimuth;
        const double rx_bore = scene.rx_site(link).boresight_azimuth;
        std::vector<double> gt(nt), gr(nr);
        std::vector<cdouble> phase(nf);

        for (const PropagationPath &p : paths)
        {
            if (p.amplitude == cdouble(0.0, 0.0))
                continue;
            for (std::size_t t = 0; t < nt; ++t)
                gt[t] = beam_gain(tx_grid.azimuth_pattern(t), p.azimuth_departure - tx_bore);
            for (std::size_t r = 0; r < nr; ++r)
                gr[r] = beam_gain(rx_grid.azimuth_pattern(r), p.azimuth_arrival - rx_bore);
            const double elevation_gain = beam_gain(tx_grid.elevation_pattern(), p.elevation_departure) *
                                          beam_gain(rx_grid.elevation_pattern(), p.elevation_arrival);
            const cdouble coef = p.amplitude * elevation_gain;

            for (std::size_t k = 0; k < nf; ++k)
            {
                // Reduce the cycle count before scaling by 2pi to keep the phase accurate.
                const double cycles = std::fmod((band.center_frequency + band.tone_offset(k)) * p.delay, 1.0);
                phase[k] = coef * std::polar(1.0, -2.0 * kPi * cycles);
            }

            for (std::size_t k = 0; k < nf; ++k)
                for (std::size_t r = 0; r < nr; ++r)
                {
                    const cdouble base = phase[k] * gr[r];
                    for (std::size_t t = 0; t < nt; ++t)
                        ctf.values(k, r, t) += base * gt[t];
                }
        }

        if (opts.add_noise && std::isfinite(scene.noise_floor_db))
        {
            double reference = 0.0;
            for (const PropagationPath &p : paths)
                reference = std::max(reference, p.unobstructed_gain);
            const double sigma = reference * std::pow(10.0, scene.noise_floor_db / 20.0) / std::sqrt(2.0);
            if (sigma > 0.0)
            {
                std::seed_seq seq{static_cast<std::uint32_t>(scene.seed), static_cast<std::uint32_t>(scene.seed >> 32),
                                  static_cast<std::uint32_t>(noise_seed_word(link, band.band))};
                std::mt19937_64 rng(seq);
                std::normal_distribution<double> normal(0.0, sigma);
                for (cdouble &v : ctf.values.values())
                {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    v += cdouble(re, im);
                }
            }
        }
        return ctf;
    }

    CtfTensor synthesize_ctf(const Scene &scene, Link link, const BandConfig &band, const BeamGridSet &grids,
                             const SynthesisOptions &opts)
    {
        const std::vector<PropagationPath> paths = enumerate_paths(scene, link, band);
        return ctf_from_paths(paths, scene, link, band, grids, opts);
    }
}
