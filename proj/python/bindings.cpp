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

#include <algorithm>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmisac/band.hpp"
#include "mmisac/errors.hpp"
#include "mmisac/fresnel.hpp"
#include "mmisac/metrics.hpp"
#include "mmisac/pipeline.hpp"
#include "mmisac/registration.hpp"
#include "mmisac/scenario.hpp"
#include "mmisac/scene_config.hpp"
#include "mmisac/sounder.hpp"
#include "mmisac/transform.hpp"

namespace py = pybind11;
using namespace mmisac;

namespace
{
    using ComplexArray = py::array_t<cdouble, py::array::c_style | py::array::forcecast>;
    using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

    ChannelCube cube_from(const ComplexArray &a)
    {
        if (a.ndim() != 3)
            throw ConfigMismatch("expected a 3-d array [bin, rx_beam, tx_beam]");
        ChannelCube cube(a.shape(0), a.shape(1), a.shape(2));
        std::copy(a.data(), a.data() + a.size(), cube.values().begin());
        return cube;
    }

    ComplexArray array_from(const ChannelCube &c)
    {
        ComplexArray out({c.n_bins(), c.n_rx(), c.n_tx()});
        std::copy(c.values().begin(), c.values().end(), out.mutable_data());
        return out;
    }

    RealArray array_from(const PowerMatrix &m)
    {
        RealArray out({m.rows, m.cols});
        std::copy(m.data.begin(), m.data.end(), out.mutable_data());
        return out;
    }

    RealArray array_from(const std::vector<double> &v)
    {
        RealArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
        std::copy(v.begin(), v.end(), out.mutable_data());
        return out;
    }

    std::vector<double> vector_from(const RealArray &a)
    {
        return {a.data(), a.data() + a.size()};
    }

    std::vector<Point3> points_from(const RealArray &a)
    {
        if (a.ndim() != 2 || a.shape(1) != 3)
            throw ConfigMismatch("expected an (n, 3) point array");
        std::vector<Point3> pts;
        for (py::ssize_t i = 0; i < a.shape(0); ++i)
            pts.emplace_back(a.at(i, 0), a.at(i, 1), a.at(i, 2));
        return pts;
    }

    CirTensor cir_from(const ComplexArray &a, Band band, double delay_bin_width)
    {
        CirTensor cir;
        cir.band = band;
        cir.values = cube_from(a);
        cir.delay_bin_width = delay_bin_width;
        return cir;
    }

    Band band_arg(const std::string &s) { return parse_band(s); }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Dual-band mmWave ISAC channel sounding emulator and analysis toolkit";
    m.attr("__version__") = std::string(tool_version());

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigMismatch>(m, "ConfigMismatch", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<EmptyProfile>(m, "EmptyProfile", base.ptr());
    py::register_exception<DegenerateConfiguration>(m, "DegenerateConfiguration", base.ptr());
    py::register_exception<IOError>(m, "IOError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    m.def(
        "band_config",
        [](const std::string &band)
        {
            const BandConfig b = band_config(band_arg(band));
            py::dict d;
            d["center_frequency"] = b.center_frequency;
            d["bandwidth"] = b.bandwidth;
            d["n_tones"] = b.n_tones;
            d["tone_spacing"] = b.tone_spacing();
            d["delay_bin_width"] = b.delay_bin_width();
            d["max_delay"] = b.max_delay();
            return d;
        },
        py::arg("band"));

    m.def(
        "ctf_to_cir",
        [](const ComplexArray &ctf, const std::string &band, const std::string &window)
        {
            CtfTensor t;
            t.band = band_arg(band);
            t.values = cube_from(ctf);
            const WindowKind w = window == "hann" ? WindowKind::Hann : WindowKind::Rectangular;
            if (window != "hann" && window != "rectangular")
                throw ConfigError("window must be 'rectangular' or 'hann'");
            return array_from(ctf_to_cir(t, band_config(t.band), w).values);
        },
        py::arg("ctf"), py::arg("band"), py::arg("window") = "rectangular");

    m.def(
        "cir_to_ctf",
        [](const ComplexArray &cir, const std::string &band)
        {
            const Band b = band_arg(band);
            return array_from(cir_to_ctf(cir_from(cir, b, band_config(b).delay_bin_width())).values);
        },
        py::arg("cir"), py::arg("band"));

    m.def("compute_pdp", [](const ComplexArray &cir) { return array_from(compute_pdp(cir_from(cir, Band::B60, 1.0))); },
          py::arg("cir"));
    m.def(
        "compute_adps",
        [](const ComplexArray &cir, const std::string &side)
        { return array_from(compute_adps(cir_from(cir, Band::B60, 1.0), parse_side(side))); },
        py::arg("cir"), py::arg("side"));
    m.def(
        "compute_pap",
        [](const ComplexArray &cir, const std::string &side)
        { return array_from(compute_pap(cir_from(cir, Band::B60, 1.0), parse_side(side))); },
        py::arg("cir"), py::arg("side"));
    m.def(
        "compute_rms_ds",
        [](const RealArray &pdp, double delay_bin_width, double threshold_db)
        {
            const auto v = vector_from(pdp);
            return compute_rms_ds(v, delay_bin_width, threshold_db);
        },
        py::arg("pdp"), py::arg("delay_bin_width"), py::arg("threshold_db") = kDefaultThresholdDb);
    m.def(
        "compute_angular_spread",
        [](const RealArray &pap, const RealArray &angles)
        {
            const auto p = vector_from(pap);
            const auto a = vector_from(angles);
            if (p.size() != a.size())
                throw ConfigMismatch("pap and angles differ in length");
            return compute_angular_spread(p, a);
        },
        py::arg("pap"), py::arg("angles"));

    m.def("first_fresnel_radius", &first_fresnel_radius, py::arg("d1"), py::arg("d2"), py::arg("wavelength"));

    m.def(
        "beam_angles",
        [](const std::string &band, const std::string &side)
        { return array_from(build_beam_grid(band_config(band_arg(band)), parse_side(side)).steering_angles); },
        py::arg("band"), py::arg("side"));
    m.def("schedule_csv", [] { return schedule_csv(build_scan_schedule(build_beam_grids())); });

    m.def(
        "parse_scenario_code",
        [](const std::string &code)
        {
            std::vector<std::tuple<std::string, int, int>> out;
            for (const ScenarioEntry &e : parse_scenario_code(code).entries)
                out.emplace_back(std::string(1, e.label), e.location, e.orientation);
            return out;
        },
        py::arg("code"));
    m.def(
        "normalize_scenario_code", [](const std::string &code) { return format_scenario_code(parse_scenario_code(code)); },
        py::arg("code"));
    m.def("measurement_catalog", &measurement_catalog);

    m.def(
        "fit_rigid_transform",
        [](const RealArray &local, const RealArray &global)
        {
            const auto l = points_from(local);
            const auto g = points_from(global);
            const RigidFit f = fit_rigid_transform(l, g);
            RealArray rot({3, 3});
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    rot.mutable_at(i, j) = f.transform.rotation(i, j);
            RealArray trans(std::vector<py::ssize_t>{3});
            for (int i = 0; i < 3; ++i)
                trans.mutable_at(i) = f.transform.translation(i);
            return py::make_tuple(rot, trans, f.residual_rms);
        },
        py::arg("local"), py::arg("global_"));

    m.def(
        "synthesize",
        [](const std::string &code, const std::string &config)
        {
            const SceneDocument doc = config.empty() ? default_scene_document() : parse_scene_document(config);
            const TensorSet set = synthesize_measurement(doc, parse_scenario_code(code));
            py::dict out;
            for (const CtfTensor &t : set.tensors)
                out[py::str(std::string(to_string(t.link)) + "_" + std::string(to_string(t.band)))] = array_from(t.values);
            return out;
        },
        py::arg("code") = "", py::arg("config") = "");

    m.def(
        "default_scene_json", [] { return scene_document_json(default_scene_document()); });
}
