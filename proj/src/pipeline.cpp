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

#include "mmisac/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "mmisac/errors.hpp"
#include "mmisac/scenario.hpp"
#include "mmisac/tensor_io.hpp"
#include "mmisac/transform.hpp"

namespace fs = std::filesystem;

namespace mmisac
{
    using nlohmann::json;

    namespace
    {
        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IOError("cannot write " + path.string());
            out << text;
            if (!out)
                throw IOError("write failed for " + path.string());
        }

        std::string read_text(const fs::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw IOError("cannot open " + path.string());
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        void make_dirs(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw IOError("cannot create directory " + dir.string() + ": " + ec.message());
        }

        std::string stem(Link link, Band band)
        {
            return std::string(to_string(link)) + "_" + std::string(to_string(band));
        }

        std::string matrix_csv(const PowerMatrix &m, std::size_t rows)
        {
            std::string out;
            for (std::size_t i = 0; i < rows; ++i)
            {
                for (std::size_t j = 0; j < m.cols; ++j)
                {
                    if (j)
                        out += ',';
                    out += num(m(i, j));
                }
                out += '\n';
            }
            return out;
        }

        std::string profiles_csv(const MetricSet &m)
        {
            std::string out = "index,delay_s,pdp,tx_angle_rad,pap_tx,rx_angle_rad,pap_rx\n";
            for (std::size_t n = 0; n < m.pdp.size(); ++n)
            {
                out += std::to_string(n) + ',' + num(static_cast<double>(n) * m.delay_bin_width) + ',' + num(m.pdp[n]) + ',';
                if (n < m.pap_tx.size())
                    out += num(m.tx_angles[n]) + ',' + num(m.pap_tx[n]);
                else
                    out += ',';
                out += ',';
                if (n < m.pap_rx.size())
                    out += num(m.rx_angles[n]) + ',' + num(m.pap_rx[n]);
                else
                    out += ',';
                out += '\n';
            }
            return out;
        }

        std::size_t argmax(const std::vector<double> &v)
        {
            return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        }

        // Manifest over every regular file below `dir` except manifest.json itself.
        RunManifest build_manifest(const fs::path &dir, const SceneDocument &doc, const std::string &scenario)
        {
            RunManifest m;
            m.tool_version = std::string(tool_version());
            m.scene_hash = sha256_hex(scene_document_json(doc));
            m.seed = doc.scene.seed;
            m.scenario = scenario;
            std::vector<std::string> files;
            for (const auto &entry : fs::recursive_directory_iterator(dir))
                if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
                    files.push_back(fs::relative(entry.path(), dir).generic_string());
            std::sort(files.begin(), files.end());
            for (const std::string &f : files)
                m.artifacts.push_back({f, file_sha256(dir / f)});
            write_text(dir / "manifest.json", m.to_json());
            return m;
        }
    }

    std::string_view tool_version()
    {
        return "mmisac 0.3.0";
    }

    std::string sha256_hex(std::string_view bytes)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw IOError("SHA-256 computation failed");
        static const char *hex = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0; i < len; ++i)
        {
            out += hex[digest[i] >> 4];
            out += hex[digest[i] & 0xf];
        }
        return out;
    }

    std::string file_sha256(const fs::path &path)
    {
        return sha256_hex(read_text(path));
    }

    std::string RunManifest::to_json() const
    {
        json j;
        j["tool_version"] = tool_version;
        j["scene_hash"] = scene_hash;
        j["seed"] = seed;
        j["scenario"] = scenario;
        j["artifacts"] = json::array();
        for (const ArtifactRecord &a : artifacts)
            j["artifacts"].push_back(json{{"path", a.path}, {"sha256", a.sha256}});
        return j.dump(2) + "\n";
    }

    RunManifest RunManifest::from_json(std::string_view text)
    {
        try
        {
            const json j = json::parse(text.begin(), text.end());
            RunManifest m;
            m.tool_version = j.at("tool_version").get<std::string>();
            m.scene_hash = j.at("scene_hash").get<std::string>();
            m.seed = j.at("seed").get<std::uint64_t>();
            m.scenario = j.at("scenario").get<std::string>();
            for (const json &a : j.at("artifacts"))
                m.artifacts.push_back({a.at("path").get<std::string>(), a.at("sha256").get<std::string>()});
            return m;
        }
        catch (const json::exception &e)
        {
            throw IOError(std::string("malformed manifest: ") + e.what());
        }
    }

    void verify_manifest(const RunManifest &manifest, const fs::path &dir)
    {
        for (const ArtifactRecord &a : manifest.artifacts)
        {
            const fs::path p = dir / a.path;
            if (!fs::exists(p))
                throw IOError("manifest artifact missing: " + p.string());
            if (file_sha256(p) != a.sha256)
                throw IOError("manifest digest mismatch: " + p.string());
        }
    }

    std::string tensor_file_name(Link link, Band band)
    {
        return stem(link, band) + ".ctf";
    }

    const CtfTensor &TensorSet::get(Link link, Band band) const
    {
        for (const CtfTensor &t : tensors)
            if (t.link == link && t.band == band)
                return t;
        throw ConfigMismatch("tensor set has no " + stem(link, band) + " entry");
    }

    TensorSet synthesize_measurement(const SceneDocument &doc, const ScenarioCode &code)
    {
        const Scene scene = bind_scenario(code, doc.scene, doc.locations);
        const BeamGridSet grids = build_beam_grids();
        TensorSet set;
        for (Link link : kLinks)
            for (Band band : kBands)
            {
                CtfTensor t = synthesize_ctf(scene, link, band_config(band), grids);
                quantize_complex64(t.values);
                set.tensors.push_back(std::move(t));
            }
        return set;
    }

    RunManifest write_tensor_set(const TensorSet &set, const SceneDocument &doc, const ScenarioCode &code,
                                 const fs::path &out_dir)
    {
        make_dirs(out_dir);
        for (const CtfTensor &t : set.tensors)
            write_ctf(out_dir / tensor_file_name(t.link, t.band), t);
        return build_manifest(out_dir, doc, format_scenario_code(code));
    }

    TensorSet read_tensor_set(const fs::path &dir)
    {
        const BeamGridSet grids = build_beam_grids();
        TensorSet set;
        for (Link link : kLinks)
            for (Band band : kBands)
            {
                const fs::path p = dir / tensor_file_name(link, band);
                if (!fs::exists(p))
                    throw IOError("missing tensor file " + p.string());
                CtfTensor t = read_ctf(p);
                if (t.link != link || t.band != band)
                    throw IOError(p.string() + ": header says " + stem(t.link, t.band));
                const BandConfig cfg = band_config(band);
                if (t.n_f() != cfg.n_tones || t.values.n_rx() != grids.get(band, Side::Rx).size() ||
                    t.values.n_tx() != grids.get(band, Side::Tx).size())
                    throw ConfigMismatch(p.string() + ": tensor dimensions do not match the " +
                                         std::string(to_string(band)) + " sounder configuration");
                set.tensors.push_back(std::move(t));
            }
        return set;
    }

    std::vector<MetricSet> analyze_tensor_set(const TensorSet &set, const BeamGridSet &grids, double threshold_db)
    {
        std::vector<MetricSet> out;
        for (const CtfTensor &t : set.tensors)
        {
            const CirTensor cir = ctf_to_cir(t, band_config(t.band));
            try
            {
                out.push_back(compute_metric_set(cir, grids.get(t.band, Side::Tx), grids.get(t.band, Side::Rx), threshold_db));
            }
            catch (const EmptyProfile &e)
            {
                throw EmptyProfile(stem(t.link, t.band) + ": " + e.what());
            }
        }
        return out;
    }

    std::vector<DeltaMetrics> diff_metric_sets(const std::vector<MetricSet> &with_person,
                                               const std::vector<MetricSet> &without_person)
    {
        if (with_person.size() != without_person.size())
            throw ConfigMismatch("metric set collections differ in size");
        std::vector<DeltaMetrics> out;
        for (std::size_t i = 0; i < with_person.size(); ++i)
            out.push_back(delta_metrics(with_person[i], without_person[i]));
        return out;
    }

    void write_metric_exports(const std::vector<MetricSet> &metrics, const fs::path &out_dir)
    {
        make_dirs(out_dir);
        json summary;
        summary["metrics"] = json::array();
        for (const MetricSet &m : metrics)
        {
            const std::string s = stem(m.link, m.band);
            write_text(out_dir / (s + "_profiles.csv"), profiles_csv(m));
            write_text(out_dir / (s + "_adps_tx.csv"), matrix_csv(m.adps_tx, m.adps_tx.rows));
            write_text(out_dir / (s + "_adps_rx.csv"), matrix_csv(m.adps_rx, m.adps_rx.rows));
            summary["threshold_db"] = m.threshold_db;
            summary["metrics"].push_back(json{{"link", std::string(to_string(m.link))},
                                              {"band", std::string(to_string(m.band))},
                                              {"delay_bin_width_s", m.delay_bin_width},
                                              {"pdp_peak_bin", argmax(m.pdp)},
                                              {"rms_ds_s", m.rms_ds},
                                              {"asd_rad", m.asd},
                                              {"asa_rad", m.asa}});
        }
        write_text(out_dir / "summary.json", summary.dump(2) + "\n");
    }

    void write_delta_exports(const std::vector<DeltaMetrics> &deltas, const fs::path &out_dir)
    {
        make_dirs(out_dir);
        std::string csv = "link,band,d_rms_ds_s,d_asd_rad,d_asa_rad\n";
        for (const DeltaMetrics &d : deltas)
        {
            const std::string s = stem(d.link, d.band);
            csv += std::string(to_string(d.link)) + ',' + std::string(to_string(d.band)) + ',' + num(d.d_rms_ds) + ',' +
                   num(d.d_asd) + ',' + num(d.d_asa) + '\n';
            const std::size_t rows = bins_within_distance(d.delay_bin_width, d.adps_delta_db_tx.rows);
            write_text(out_dir / (s + "_adps_delta_tx.csv"), matrix_csv(d.adps_delta_db_tx, rows));
            write_text(out_dir / (s + "_adps_delta_rx.csv"), matrix_csv(d.adps_delta_db_rx, rows));
        }
        write_text(out_dir / "delta_summary.csv", csv);
    }

    RunManifest cmd_synth(const SceneDocument &doc, const ScenarioCode &code, const fs::path &out_dir)
    {
        return write_tensor_set(synthesize_measurement(doc, code), doc, code, out_dir);
    }

    std::vector<MetricSet> cmd_analyze(const fs::path &in_dir, double threshold_db, const fs::path &out_dir)
    {
        const TensorSet set = read_tensor_set(in_dir);
        auto metrics = analyze_tensor_set(set, build_beam_grids(), threshold_db);
        write_metric_exports(metrics, out_dir);
        return metrics;
    }

    std::vector<DeltaMetrics> cmd_diff(const fs::path &dir_with, const fs::path &dir_without, double threshold_db,
                                       const fs::path &out_dir)
    {
        const BeamGridSet grids = build_beam_grids();
        const auto with_person = analyze_tensor_set(read_tensor_set(dir_with), grids, threshold_db);
        const auto without_person = analyze_tensor_set(read_tensor_set(dir_without), grids, threshold_db);
        auto deltas = diff_metric_sets(with_person, without_person);
        write_delta_exports(deltas, out_dir);
        return deltas;
    }

    double median(std::vector<double> values)
    {
        if (values.empty())
            throw DomainError("median of an empty sample");
        const std::size_t n = values.size();
        std::nth_element(values.begin(), values.begin() + n / 2, values.end());
        const double upper = values[n / 2];
        if (n % 2 == 1)
            return upper;
        const double lower = *std::max_element(values.begin(), values.begin() + n / 2);
        return 0.5 * (lower + upper);
    }

    std::vector<AggregateRow> aggregate_by_location(const std::vector<ScenarioOutcome> &outcomes)
    {
        struct Samples
        {
            std::vector<double> ds, asd, asa;
        };
        // key: (location, link, band)
        std::map<std::tuple<int, std::uint32_t, std::uint32_t>, Samples> groups;
        for (const ScenarioOutcome &o : outcomes)
        {
            if (!o.ok)
                continue;
            const ScenarioCode code = parse_scenario_code(o.code);
            if (code.entries.size() != 1)
                continue;
            for (const DeltaMetrics &d : o.deltas)
            {
                Samples &s = groups[{code.entries.front().location, static_cast<std::uint32_t>(d.link),
                                     static_cast<std::uint32_t>(d.band)}];
                s.ds.push_back(d.d_rms_ds);
                s.asd.push_back(d.d_asd);
                s.asa.push_back(d.d_asa);
            }
        }

        std::vector<AggregateRow> rows;
        for (const auto &[key, s] : groups)
        {
            AggregateRow r;
            r.location = std::get<0>(key);
            r.link = static_cast<Link>(std::get<1>(key));
            r.band = static_cast<Band>(std::get<2>(key));
            r.count = s.ds.size();
            r.median_d_rms_ds = median(s.ds);
            r.median_d_asd = median(s.asd);
            r.median_d_asa = median(s.asa);
            rows.push_back(r);
        }
        return rows;
    }

    std::string aggregate_csv(const std::vector<AggregateRow> &rows)
    {
        std::string out = "location,link,band,count,median_d_rms_ds_s,median_d_asd_rad,median_d_asa_rad\n";
        for (const AggregateRow &r : rows)
            out += std::to_string(r.location) + ',' + std::string(to_string(r.link)) + ',' + std::string(to_string(r.band)) +
                   ',' + std::to_string(r.count) + ',' + num(r.median_d_rms_ds) + ',' + num(r.median_d_asd) + ',' +
                   num(r.median_d_asa) + '\n';
        return out;
    }

    CampaignReport cmd_campaign(const std::vector<ScenarioCode> &codes, const SceneDocument &doc,
                                const CampaignOptions &opts, const fs::path &out_dir)
    {
        make_dirs(out_dir);
        const BeamGridSet grids = build_beam_grids();

        // Shared no-person reference
        const fs::path baseline_dir = out_dir / "baseline";
        const TensorSet baseline = synthesize_measurement(doc, ScenarioCode{});
        const RunManifest baseline_manifest = write_tensor_set(baseline, doc, ScenarioCode{}, baseline_dir / "ctf");
        const std::vector<MetricSet> baseline_metrics = analyze_tensor_set(baseline, grids, opts.threshold_db);
        write_metric_exports(baseline_metrics, baseline_dir / "analysis");

        CampaignReport report;
        report.outcomes.resize(codes.size());

        auto run_one = [&](std::size_t i)
        {
            ScenarioOutcome &o = report.outcomes[i];
            o.code = format_scenario_code(codes[i]);
            char prefix[16];
            std::snprintf(prefix, sizeof prefix, "%03zu_", i);
            const fs::path dir = out_dir / "scenarios" / (prefix + (o.code.empty() ? std::string("none") : o.code));
            try
            {
                const TensorSet set = synthesize_measurement(doc, codes[i]);
                if (opts.keep_tensors)
                    write_tensor_set(set, doc, codes[i], dir / "ctf");
                const auto metrics = analyze_tensor_set(set, grids, opts.threshold_db);
                write_metric_exports(metrics, dir / "analysis");
                o.deltas = diff_metric_sets(metrics, baseline_metrics);
                write_delta_exports(o.deltas, dir / "diff");
                o.ok = true;
            }
            catch (const std::exception &e)
            {
                o.ok = false;
                o.error = e.what();
                o.deltas.clear();
            }
        };

        std::atomic<std::size_t> next{0};
        auto worker = [&]
        {
            for (std::size_t i = next++; i < codes.size(); i = next++)
                run_one(i);
        };
        const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(1, codes.size()))));
        std::vector<std::thread> pool;
        for (unsigned j = 1; j < jobs; ++j)
            pool.emplace_back(worker);
        worker();
        for (std::thread &t : pool)
            t.join();

        // Single-threaded tail: tables and manifest
        verify_manifest(baseline_manifest, baseline_dir / "ctf");

        std::string scenarios = "index,code,link,band,d_rms_ds_s,d_asd_rad,d_asa_rad\n";
        std::string failures = "index,code,error\n";
        for (std::size_t i = 0; i < report.outcomes.size(); ++i)
        {
            const ScenarioOutcome &o = report.outcomes[i];
            if (!o.ok)
            {
                ++report.failures;
                std::string msg = o.error;
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                std::replace(msg.begin(), msg.end(), ',', ';');
                failures += std::to_string(i) + ',' + o.code + ',' + msg + '\n';
                continue;
            }
            for (const DeltaMetrics &d : o.deltas)
                scenarios += std::to_string(i) + ',' + o.code + ',' + std::string(to_string(d.link)) + ',' +
                             std::string(to_string(d.band)) + ',' + num(d.d_rms_ds) + ',' + num(d.d_asd) + ',' +
                             num(d.d_asa) + '\n';
        }
        report.aggregate = aggregate_by_location(report.outcomes);
        write_text(out_dir / "scenarios.csv", scenarios);
        write_text(out_dir / "failures.csv", failures);
        write_text(out_dir / "aggregate.csv", aggregate_csv(report.aggregate));
        build_manifest(out_dir, doc, "campaign");
        return report;
    }
}
