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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmisac/band.hpp"
#include "mmisac/sounder.hpp"
#include "mmisac/tensor.hpp"
#include "mmisac/types.hpp"

namespace mmisac
{
    // Floor-plan convention: x to the right, y toward the top (the Tx1/window wall),
    // z up. Azimuths are counter-clockwise from +x, so a clockwise turn in the floor
    // plan decreases the azimuth.

    /// Axis-aligned rectangular reflector lying in the plane {x[normal_axis] = offset}.
    struct Reflector
    {
        std::string name;
        int normal_axis = 0;
        double offset = 0.0;
        // Extent along the two remaining axes, taken in x, y, z order.
        double u_min = 0.0, u_max = 0.0;
        double v_min = 0.0, v_max = 0.0;
        PerBand<double> reflection{}; // amplitude reflection coefficient

        bool covers(const Point3 &p) const;
        Point3 mirror(const Point3 &p) const;
        double signed_distance(const Point3 &p) const { return p[normal_axis] - offset; }
    };

    struct Room
    {
        Point3 min_corner{0.0, 0.0, 0.0};
        Point3 max_corner{0.0, 0.0, 0.0};
        PerBand<double> wall_reflection{0.4, 0.35};
        PerBand<double> floor_reflection{0.3, 0.25};
        PerBand<double> ceiling_reflection{0.3, 0.25};

        bool contains(const Point3 &p) const;
        /// The six faces as reflectors: x-, x+, y-, y+, floor, ceiling.
        std::vector<Reflector> faces() const;
    };

    /// One transceiver position. The 24 GHz array sits above the 60 GHz array.
    struct Site
    {
        std::string name;
        PerBand<Point3> position;
        double boresight_azimuth = 0.0; // rad
    };

    /// Human body parameters shared by every person of a scene.
    struct HumanModel
    {
        double sigma_max = 0.6;    // m^2, peak of the orientation lobe
        double sigma_floor = 0.05; // m^2
        double lobe_exponent = 2.0;
        double torso_height = 1.2; // m, height of the equivalent point scatterer
        // Silhouette half-width = radius * (width_min + width_span * |cos(facing - path direction)|)
        double width_min = 0.6;
        double width_span = 0.4;
        double clearance_fresnel_radii = 3.0;
    };

    /// A person modelled as a vertical cylinder standing on the floor at `center`.
    struct Person
    {
        char label = 'A';
        int location_index = 0;
        int orientation_index = 0;
        Point3 center{0.0, 0.0, 0.0};
        double cylinder_radius = 0.15;
        double height = 1.70;
        double facing_azimuth = 0.0; // rad
    };

    struct Scene
    {
        Room room;
        std::vector<Reflector> panels;
        std::array<Site, 2> tx; // Tx1, Tx2
        std::array<Site, 2> rx; // Rx1, Rx2
        std::vector<Person> persons;
        int max_reflection_order = 2;
        double noise_floor_db = -40.0; // relative to the strongest unobstructed path
        std::uint64_t seed = 1;
        HumanModel human;

        const Site &tx_site(Link l) const { return tx[tx_index(l)]; }
        const Site &rx_site(Link l) const { return rx[rx_index(l)]; }

        // Throws ConfigError on sites outside the room, bad reflection order or bad persons.
        void validate() const;
    };

    /// Approximate replica of the measurement office: crossing Tx1-Rx2 / Tx2-Rx1 links,
    /// a metal cabinet on the window wall and a whiteboard near Tx2.
    Scene default_scene();

    enum class PathKind
    {
        LOS,
        Reflection,
        HumanScatter
    };

    struct PropagationPath
    {
        PathKind kind = PathKind::LOS;
        int order = 0;                   // number of specular bounces
        std::vector<Point3> vertices;    // tx, interaction points..., rx
        std::vector<int> interactions;   // reflector index per bounce, or the person index for HumanScatter
        double length = 0.0;             // m
        double delay = 0.0;              // s
        cdouble amplitude{0.0, 0.0};     // linear, after blockage
        double unobstructed_gain = 0.0;  // |amplitude| before blockage
        double azimuth_departure = 0.0;
        double azimuth_arrival = 0.0;    // direction the wave arrives from, seen at rx
        double elevation_departure = 0.0;
        double elevation_arrival = 0.0;
    };

    /// Knife-edge diffraction loss J(v) in dB; zero for v <= -0.78.
    double knife_edge_loss_db(double v);

    /// Horizontal half-width of the body silhouette seen by a ray travelling along `path_azimuth`.
    double silhouette_half_width(const Person &person, double path_azimuth, const HumanModel &model = {});

    /*!
     * Double knife-edge attenuation of a polyline by one person (linear amplitude factor in
     * (0, 1]). Each leg is treated separately and the factors multiply. For a leg whose
     * horizontal projection passes the body axis strictly between its endpoints and below
     * the body height, the two silhouette edges each contribute J(v) with
     * v = h * sqrt(2 (d1 + d2) / (lambda d1 d2)), where h is the signed penetration of the
     * ray into the silhouette (negative when the ray clears it). A leg with clearance above
     * `clearance_fresnel_radii` first-zone radii is unaffected. A leg that starts or ends
     * inside the body is absorbed (factor 0).
     */
    double blockage_attenuation(std::span<const Point3> polyline, const Person &person, double wavelength,
                                const HumanModel &model = {});

    /// Orientation-dependent bistatic cross-section sigma_max * max(0, cos beta)^p + sigma_floor.
    /// beta is between the facing direction and the bisector of the incident/scattered directions
    /// (both azimuths point away from the person). A forward-scatter geometry has no bisector and
    /// returns the floor.
    double scatter_cross_section(const Person &person, double incident_azimuth, double scattered_azimuth,
                                 const HumanModel &model = {});

    /// Bistatic point-scatterer amplitude sqrt(sigma/4pi) * lambda / (4pi d_tx d_rx). Propagation
    /// phase is carried by the path delay, so the result is real and non-negative.
    cdouble human_scatter_amplitude(const Person &person, double incident_azimuth, double scattered_azimuth,
                                    double d_tx, double d_rx, double wavelength, const HumanModel &model = {});

    /*!
     * Image-method path enumeration for one link and band: LOS, specular reflections off the
     * room faces and panels up to `max_reflection_order`, and one torso scatter path per person.
     * Legs crossing a panel other than the one being reflected on are dropped; every path is
     * then attenuated by every person it passes (a person never blocks its own scatter path).
     * Throws GeometryError when a site lies on a reflector plane.
     */
    std::vector<PropagationPath> enumerate_paths(const Scene &scene, Link link, const BandConfig &band);

    struct SynthesisOptions
    {
        bool add_noise = true;
    };

    /*!
     * Beam-space CTF from a path list:
     * H[f][r][t] = sum_p gT(t) gR(r) gEl * a_p * exp(-j 2 pi f_abs tau_p) + noise.
     * Noise is circular complex Gaussian with standard deviation noise_floor_db below the
     * strongest unobstructed path, drawn from a stream seeded by (scene.seed, link, band).
     */
    CtfTensor ctf_from_paths(std::span<const PropagationPath> paths, const Scene &scene, Link link,
                             const BandConfig &band, const BeamGridSet &grids, const SynthesisOptions &opts = {});

    CtfTensor synthesize_ctf(const Scene &scene, Link link, const BandConfig &band, const BeamGridSet &grids,
                             const SynthesisOptions &opts = {});
}
