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

#include "mmisac/scene_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mmisac/errors.hpp"

namespace mmisac
{
    using nlohmann::json;

    namespace
    {
        const char *axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }

        int parse_axis(const json &j)
        {
            const std::string s = j.get<std::string>();
            if (s == "x")
                return 0;
            if (s == "y")
                return 1;
            if (s == "z")
                return 2;
            throw ConfigError("normal_axis must be x, y or z");
        }

        json point_json(const Point3 &p) { return json::array({p.x(), p.y(), p.z()}); }

        Point3 parse_point(const json &j)
        {
            if (!j.is_array() || j.size() != 3)
                throw ConfigError("expected a 3-element coordinate array");
            return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
        }

        json per_band_json(const PerBand<double> &v) { return json{{"24GHz", v.b24}, {"60GHz", v.b60}}; }

        void parse_per_band(const json &j, PerBand<double> &out)
        {
            if (j.is_number())
            {
                out.b24 = out.b60 = j.get<double>();
                return;
            }
            if (j.contains("24GHz"))
                out.b24 = j.at("24GHz").get<double>();
            if (j.contains("60GHz"))
                out.b60 = j.at("60GHz").get<double>();
        }

        template <typename T>
        void read_opt(const json &j, const char *key, T &out)
        {
            if (j.contains(key))
                out = j.at(key).get<T>();
        }

        json reflector_json(const Reflector &r)
        {
            return json{{"name", r.name},
                        {"normal_axis", axis_name(r.normal_axis)},
                        {"offset", r.offset},
                        {"u_range", json::array({r.u_min, r.u_max})},
                        {"v_range", json::array({r.v_min, r.v_max})},
                        {"reflection", per_band_json(r.reflection)}};
        }

        Reflector parse_reflector(const json &j)
        {
            Reflector r;
            r.name = j.value("name", std::string("panel"));
            r.normal_axis = parse_axis(j.at("normal_axis"));
            r.offset = j.at("offset").get<double>();
            const json &u = j.at("u_range"), &v = j.at("v_range");
            r.u_min = u.at(0).get<double>();
            r.u_max = u.at(1).get<double>();
            r.v_min = v.at(0).get<double>();
            r.v_max = v.at(1).get<double>();
            parse_per_band(j.at("reflection"), r.reflection);
            return r;
        }

        json site_json(const Site &s)
        {
            return json{{"position_24GHz", point_json(s.position.b24)},
                        {"position_60GHz", point_json(s.position.b60)},
                        {"boresight_azimuth_rad", s.boresight_azimuth}};
        }

        void parse_site(const json &j, Site &s)
        {
            if (j.contains("position_60GHz"))
                s.position.b60 = parse_point(j.at("position_60GHz"));
            if (j.contains("position_24GHz"))
                s.position.b24 = parse_point(j.at("position_24GHz"));
            read_opt(j, "boresight_azimuth_rad", s.boresight_azimuth);
            if (j.contains("boresight_azimuth_deg"))
                s.boresight_azimuth = deg2rad(j.at("boresight_azimuth_deg").get<double>());
        }

        json human_json(const HumanModel &h)
        {
            return json{{"sigma_max", h.sigma_max},
                        {"sigma_floor", h.sigma_floor},
                        {"lobe_exponent", h.lobe_exponent},
                        {"torso_height", h.torso_height},
                        {"width_min", h.width_min},
                        {"width_span", h.width_span},
                        {"clearance_fresnel_radii", h.clearance_fresnel_radii}};
        }

        void parse_human(const json &j, HumanModel &h)
        {
            read_opt(j, "sigma_max", h.sigma_max);
            read_opt(j, "sigma_floor", h.sigma_floor);
            read_opt(j, "lobe_exponent", h.lobe_exponent);
            read_opt(j, "torso_height", h.torso_height);
            read_opt(j, "width_min", h.width_min);
            read_opt(j, "width_span", h.width_span);
            read_opt(j, "clearance_fresnel_radii", h.clearance_fresnel_radii);
        }

        json person_json(const Person &p)
        {
            return json{{"label", std::string(1, p.label)},
                        {"location", p.location_index},
                        {"orientation", p.orientation_index},
                        {"center", point_json(p.center)},
                        {"radius", p.cylinder_radius},
                        {"height", p.height},
                        {"facing_azimuth_rad", p.facing_azimuth}};
        }

        constexpr const char *kSiteNames[4] = {"Tx1", "Tx2", "Rx1", "Rx2"};

        Site &site_slot(Scene &s, int i) { return i < 2 ? s.tx[i] : s.rx[i - 2]; }
    }

    SceneDocument default_scene_document()
    {
        SceneDocument doc;
        doc.scene = default_scene();
        doc.locations = default_location_map(doc.scene);
        return doc;
    }

    std::string scene_document_json(const SceneDocument &doc)
    {
        const Scene &s = doc.scene;
        json j;
        j["schema"] = std::string(kSceneSchema);
        j["room"] = json{{"min", point_json(s.room.min_corner)},
                         {"max", point_json(s.room.max_corner)},
                         {"wall_reflection", per_band_json(s.room.wall_reflection)},
                         {"floor_reflection", per_band_json(s.room.floor_reflection)},
                         {"ceiling_reflection", per_band_json(s.room.ceiling_reflection)}};
        j["panels"] = json::array();
        for (const Reflector &r : s.panels)
            j["panels"].push_back(reflector_json(r));
        j["sites"] = json::object();
        for (int i = 0; i < 4; ++i)
            j["sites"][kSiteNames[i]] = site_json(i < 2 ? s.tx[i] : s.rx[i - 2]);
        j["persons"] = json::array();
        for (const Person &p : s.persons)
            j["persons"].push_back(person_json(p));
        j["human"] = human_json(s.human);
        j["max_reflection_order"] = s.max_reflection_order;
        if (std::isfinite(s.noise_floor_db))
            j["noise_floor_db"] = s.noise_floor_db;
        else
            j["noise_floor_db"] = "off";
        j["seed"] = s.seed;

        json locs = json::array();
        for (const Point3 &p : doc.locations.coordinates)
            locs.push_back(point_json(p));
        j["locations"] = json{{"coordinates", locs}, {"on_direct_path", doc.locations.on_direct_path}};
        return j.dump(2) + "\n";
    }

    SceneDocument parse_scene_document(std::string_view json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text.begin(), json_text.end());
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("scene config is not valid JSON: ") + e.what());
        }

        try
        {
            if (j.value("schema", std::string()) != kSceneSchema)
                throw ConfigError("scene config must declare \"schema\": \"scene/1\"");

            SceneDocument doc;
            Scene &s = doc.scene;
            s = default_scene();

            if (j.contains("room"))
            {
                const json &r = j.at("room");
                if (r.contains("min"))
                    s.room.min_corner = parse_point(r.at("min"));
                if (r.contains("max"))
                    s.room.max_corner = parse_point(r.at("max"));
                if (r.contains("wall_reflection"))
                    parse_per_band(r.at("wall_reflection"), s.room.wall_reflection);
                if (r.contains("floor_reflection"))
                    parse_per_band(r.at("floor_reflection"), s.room.floor_reflection);
                if (r.contains("ceiling_reflection"))
                    parse_per_band(r.at("ceiling_reflection"), s.room.ceiling_reflection);
            }
            if (j.contains("panels"))
            {
                s.panels.clear();
                for (const json &p : j.at("panels"))
                    s.panels.push_back(parse_reflector(p));
            }
            if (j.contains("sites"))
            {
                const json &sites = j.at("sites");
                for (auto it = sites.begin(); it != sites.end(); ++it)
                {
                    int slot = -1;
                    for (int i = 0; i < 4; ++i)
                        if (it.key() == kSiteNames[i])
                            slot = i;
                    if (slot < 0)
                        throw ConfigError("unknown site '" + it.key() + "'");
                    parse_site(it.value(), site_slot(s, slot));
                }
            }
            if (j.contains("human"))
                parse_human(j.at("human"), s.human);
            read_opt(j, "max_reflection_order", s.max_reflection_order);
            if (j.contains("noise_floor_db"))
            {
                const json &n = j.at("noise_floor_db");
                if (n.is_string() && n.get<std::string>() == "off")
                    s.noise_floor_db = -std::numeric_limits<double>::infinity();
                else
                    s.noise_floor_db = n.get<double>();
            }
            read_opt(j, "seed", s.seed);

            doc.locations = default_location_map(s);
            if (j.contains("locations"))
            {
                const json &l = j.at("locations");
                if (l.contains("coordinates"))
                {
                    const json &c = l.at("coordinates");
                    if (!c.is_array() || c.size() != kNumLocations)
                        throw ConfigError("locations.coordinates must list 8 points");
                    for (int i = 0; i < kNumLocations; ++i)
                        doc.locations.coordinates[i] = parse_point(c[i]);
                }
                if (l.contains("on_direct_path"))
                    doc.locations.on_direct_path = l.at("on_direct_path").get<std::set<int>>();
            }

            // Persons listed in the config; center and facing default to the Loc/Orient rule.
            s.persons.clear();
            if (j.contains("persons"))
                for (const json &pj : j.at("persons"))
                {
                    Person p;
                    const std::string label = pj.at("label").get<std::string>();
                    if (label.size() != 1)
                        throw ConfigError("person label must be a single letter");
                    p.label = label[0];
                    p.location_index = pj.value("location", 0);
                    p.orientation_index = pj.value("orientation", 0);
                    if (pj.contains("center"))
                        p.center = parse_point(pj.at("center"));
                    else
                        p.center = doc.locations.at(p.location_index);
                    read_opt(pj, "radius", p.cylinder_radius);
                    read_opt(pj, "height", p.height);
                    if (pj.contains("facing_azimuth_rad"))
                        p.facing_azimuth = pj.at("facing_azimuth_rad").get<double>();
                    else
                        p.facing_azimuth = orientation_azimuth(s, p.center, p.orientation_index);
                    s.persons.push_back(p);
                }

            s.validate();
            return doc;
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("scene config: ") + e.what());
        }
    }

    SceneDocument load_scene_document(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IOError("cannot open scene config " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_scene_document(ss.str());
    }
}
