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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmisac/errors.hpp"
#include "mmisac/pipeline.hpp"
#include "mmisac/registration.hpp"
#include "mmisac/scenario.hpp"
#include "mmisac/scene_config.hpp"
#include "mmisac/sounder.hpp"

namespace fs = std::filesystem;
using namespace mmisac;

namespace
{
    struct GlobalOptions
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        double threshold_db = kDefaultThresholdDb;
        unsigned jobs = 1;
        std::string out;
    };

    SceneDocument load_document(const GlobalOptions &g)
    {
        SceneDocument doc = g.config.empty() ? default_scene_document() : load_scene_document(g.config);
        if (g.seed)
            doc.scene.seed = *g.seed;
        return doc;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IOError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path require_out(const GlobalOptions &g)
    {
        if (g.out.empty())
            throw ConfigError("--out is required for this subcommand");
        return g.out;
    }

    // Writes to --out when given, otherwise to stdout.
    void emit(const GlobalOptions &g, const std::string &text)
    {
        if (g.out.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text))
            throw IOError("cannot write " + g.out);
    }

    // "transform.txt:cloud.xyz"
    std::pair<RigidTransform, std::vector<Point3>> load_cloud_spec(const std::string &spec)
    {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw ConfigError("cloud argument must be TRANSFORM:XYZ, got '" + spec + "'");
        return {read_transform(spec.substr(0, colon)), read_xyz(spec.substr(colon + 1))};
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Dual-band mmWave ISAC channel sounding emulator and analysis toolkit", "mmisac"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config, "Scene configuration JSON (default: built-in scene)");
    app.add_option("--seed", g.seed, "Override the scene's noise seed");
    app.add_option("--threshold-db", g.threshold_db, "Delay-spread threshold below the PDP peak")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Campaign worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output directory or file");

    std::string scenario;
    auto *synth = app.add_subcommand("synth", "Synthesize the eight CTF tensors of one scenario");
    synth->add_option("--scenario", scenario, "Scenario code, empty for the no-person baseline");
    synth->fallthrough();

    std::string in_dir;
    auto *analyze = app.add_subcommand("analyze", "Compute PDP, ADPS, PAP and spreads of a synth directory");
    analyze->add_option("--in", in_dir, "Directory written by synth")->required();
    analyze->fallthrough();

    std::string with_dir, without_dir;
    auto *diff = app.add_subcommand("diff", "Compare a with-person measurement against a reference");
    diff->add_option("--with", with_dir, "Directory with the person present")->required();
    diff->add_option("--without", without_dir, "Reference directory")->required();
    diff->fallthrough();

    std::string campaign_file;
    bool single = false, keep_tensors = false;
    auto *campaign = app.add_subcommand("campaign", "Run synth, analyze and diff for every code of a campaign");
    campaign->add_option("--file", campaign_file, "Campaign file, one code per line");
    campaign->add_flag("--single", single, "Use the 64-code single-person campaign");
    campaign->add_flag("--keep-tensors", keep_tensors, "Also write each scenario's CTF tensors");
    campaign->fallthrough();

    auto *schedule = app.add_subcommand("schedule", "Print the dual-band TDM scan schedule as CSV");
    schedule->fallthrough();

    auto *scene = app.add_subcommand("scene", "Print the canonical scene configuration");
    scene->fallthrough();

    std::vector<std::string> codes;
    std::string codes_file;
    bool list_single = false, list_catalog = false;
    auto *parse = app.add_subcommand("parse-scenarios", "Validate scenario codes and print them normalized");
    parse->add_option("codes", codes, "Scenario codes");
    parse->add_option("--file", codes_file, "Campaign file");
    parse->add_flag("--single", list_single, "List the single-person campaign");
    parse->add_flag("--catalog", list_catalog, "List the full measurement catalog");
    parse->fallthrough();

    auto *reg = app.add_subcommand("register", "Marker-based rigid registration of point clouds");
    reg->require_subcommand(1);
    reg->fallthrough();
    std::string local_markers, global_markers;
    auto *fit = reg->add_subcommand("fit", "Fit the transform taking local markers onto global markers");
    fit->add_option("--local", local_markers, "XYZ file with the marker centers in the local frame")->required();
    fit->add_option("--global", global_markers, "XYZ file with the same markers in the global frame")->required();
    fit->fallthrough();
    std::string transform_file, cloud_file;
    auto *apply = reg->add_subcommand("apply", "Transform a point cloud");
    apply->add_option("--transform", transform_file, "Transform record")->required();
    apply->add_option("--cloud", cloud_file, "XYZ point cloud")->required();
    apply->fallthrough();
    std::vector<std::string> cloud_specs;
    auto *merge = reg->add_subcommand("merge", "Transform and concatenate several clouds");
    merge->add_option("clouds", cloud_specs, "TRANSFORM:XYZ pairs")->required();
    merge->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        if (*synth)
        {
            const SceneDocument doc = load_document(g);
            const RunManifest m = cmd_synth(doc, parse_scenario_code(scenario), require_out(g));
            std::cout << "wrote " << m.artifacts.size() << " artifacts to " << g.out << "\n";
        }
        else if (*analyze)
        {
            const auto metrics = cmd_analyze(in_dir, g.threshold_db, require_out(g));
            for (const MetricSet &m : metrics)
                std::printf("%s %s rms_ds=%.6g s asd=%.6g rad asa=%.6g rad\n", std::string(to_string(m.link)).c_str(),
                            std::string(to_string(m.band)).c_str(), m.rms_ds, m.asd, m.asa);
        }
        else if (*diff)
        {
            const auto deltas = cmd_diff(with_dir, without_dir, g.threshold_db, require_out(g));
            for (const DeltaMetrics &d : deltas)
                std::printf("%s %s d_rms_ds=%.6g s d_asd=%.6g rad d_asa=%.6g rad\n",
                            std::string(to_string(d.link)).c_str(), std::string(to_string(d.band)).c_str(),
                            d.d_rms_ds, d.d_asd, d.d_asa);
        }
        else if (*campaign)
        {
            if (single == !campaign_file.empty())
                throw ConfigError("campaign needs exactly one of --file or --single");
            const std::vector<ScenarioCode> list =
                single ? enumerate_single_person_campaign() : parse_campaign(slurp(campaign_file));
            const SceneDocument doc = load_document(g);
            CampaignOptions opts;
            opts.threshold_db = g.threshold_db;
            opts.jobs = g.jobs;
            opts.keep_tensors = keep_tensors;
            const CampaignReport report = cmd_campaign(list, doc, opts, require_out(g));
            std::cout << list.size() - report.failures << "/" << list.size() << " scenarios ok, "
                      << report.aggregate.size() << " aggregate rows\n";
            for (const ScenarioOutcome &o : report.outcomes)
                if (!o.ok)
                    std::cerr << "failed " << o.code << ": " << o.error << "\n";
            if (report.failures > 0)
                return kExitPartial;
        }
        else if (*schedule)
        {
            emit(g, schedule_csv(build_scan_schedule(build_beam_grids())));
        }
        else if (*scene)
        {
            emit(g, scene_document_json(load_document(g)));
        }
        else if (*parse)
        {
            std::vector<ScenarioCode> parsed;
            for (const std::string &c : codes)
                parsed.push_back(parse_scenario_code(c));
            if (!codes_file.empty())
                for (ScenarioCode &c : parse_campaign(slurp(codes_file)))
                    parsed.push_back(std::move(c));
            if (list_single)
                for (ScenarioCode &c : enumerate_single_person_campaign())
                    parsed.push_back(std::move(c));
            if (list_catalog)
                for (const std::string &c : measurement_catalog())
                    parsed.push_back(parse_scenario_code(c));
            std::string text;
            for (const ScenarioCode &c : parsed)
                text += format_scenario_code(c) + "\n";
            emit(g, text);
        }
        else if (*fit)
        {
            const RigidFit f = fit_rigid_transform(read_xyz(local_markers), read_xyz(global_markers));
            if (!g.out.empty())
                write_transform(g.out, f.transform);
            const auto &r = f.transform.rotation;
            const auto &t = f.transform.translation;
            std::printf("rotation %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", r(0, 0), r(0, 1), r(0, 2),
                        r(1, 0), r(1, 1), r(1, 2), r(2, 0), r(2, 1), r(2, 2));
            std::printf("translation %.17g %.17g %.17g\nresidual_rms %.6g\n", t.x(), t.y(), t.z(), f.residual_rms);
        }
        else if (*apply)
        {
            const auto cloud = apply_transform(read_transform(transform_file), read_xyz(cloud_file));
            write_xyz(require_out(g), cloud);
        }
        else if (*merge)
        {
            std::vector<std::pair<RigidTransform, std::vector<Point3>>> clouds;
            for (const std::string &s : cloud_specs)
                clouds.push_back(load_cloud_spec(s));
            write_xyz(require_out(g), merge_clouds(clouds));
        }
    }
    catch (const ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    }
    catch (const fs::filesystem_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIO;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
