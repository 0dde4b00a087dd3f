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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mmisac/metrics.hpp"
#include "mmisac/scene_config.hpp"
#include "mmisac/sounder.hpp"
#include "mmisac/tensor.hpp"

namespace mmisac
{
    std::string_view tool_version();

    std::string sha256_hex(std::string_view bytes);
    std::string file_sha256(const std::filesystem::path &path);

    struct ArtifactRecord
    {
        std::string path; // relative to the manifest's directory
        std::string sha256;
    };

    struct RunManifest
    {
        std::string tool_version;
        std::string scene_hash;
        std::uint64_t seed = 0;
        std::string scenario;
        std::vector<ArtifactRecord> artifacts;

        std::string to_json() const;
        static RunManifest from_json(std::string_view text);
    };

    /// Throws IOError unless every artifact exists under `dir` with the recorded digest.
    void verify_manifest(const RunManifest &manifest, const std::filesystem::path &dir);

    /// "{link}_{band}.ctf", e.g. "Tx1Rx2_60GHz.ctf".
    std::string tensor_file_name(Link link, Band band);

    /// All eight (link, band) tensors of one measurement, link-major.
    struct TensorSet
    {
        std::vector<CtfTensor> tensors;

        const CtfTensor &get(Link link, Band band) const;
    };

    /// Synthesize the eight tensors of `doc.scene` with `code` bound, rounded to complex64.
    TensorSet synthesize_measurement(const SceneDocument &doc, const ScenarioCode &code);

    /// Write a tensor set plus manifest.json into `out_dir`.
    RunManifest write_tensor_set(const TensorSet &set, const SceneDocument &doc, const ScenarioCode &code,
                                 const std::filesystem::path &out_dir);

    /// Read the eight tensors of a synth output directory. Throws IOError naming the bad file.
    TensorSet read_tensor_set(const std::filesystem::path &dir);

    /// Metric sets of a tensor set in link-major order.
    std::vector<MetricSet> analyze_tensor_set(const TensorSet &set, const BeamGridSet &grids, double threshold_db);

    std::vector<DeltaMetrics> diff_metric_sets(const std::vector<MetricSet> &with_person,
                                               const std::vector<MetricSet> &without_person);

    // Export helpers; all CSV numbers use 17 significant digits.
    void write_metric_exports(const std::vector<MetricSet> &metrics, const std::filesystem::path &out_dir);
    void write_delta_exports(const std::vector<DeltaMetrics> &deltas, const std::filesystem::path &out_dir);

    /// synth: eight CTF1 files and manifest.json.
    RunManifest cmd_synth(const SceneDocument &doc, const ScenarioCode &code, const std::filesystem::path &out_dir);

    /// analyze: per (link, band) profile CSV and ADPS matrices, plus summary.json.
    std::vector<MetricSet> cmd_analyze(const std::filesystem::path &in_dir, double threshold_db,
                                       const std::filesystem::path &out_dir);

    /// diff: delta_summary.csv and 30 m-truncated ADPS change matrices.
    std::vector<DeltaMetrics> cmd_diff(const std::filesystem::path &dir_with, const std::filesystem::path &dir_without,
                                       double threshold_db, const std::filesystem::path &out_dir);

    struct CampaignOptions
    {
        double threshold_db = kDefaultThresholdDb;
        unsigned jobs = 1;
        bool keep_tensors = false;
    };

    struct ScenarioOutcome
    {
        std::string code;
        bool ok = false;
        std::string error;
        std::vector<DeltaMetrics> deltas;
    };

    struct AggregateRow
    {
        int location = 0;
        Link link = Link::Tx1Rx1;
        Band band = Band::B24;
        std::size_t count = 0;
        double median_d_rms_ds = 0.0;
        double median_d_asd = 0.0;
        double median_d_asa = 0.0;
    };

    struct CampaignReport
    {
        std::vector<ScenarioOutcome> outcomes; // campaign order
        std::vector<AggregateRow> aggregate;   // location, link, band order
        std::size_t failures = 0;
    };

    /// Median of a non-empty sample; the mean of the two middle values for even sizes.
    double median(std::vector<double> values);

    /// Per-location medians over the single-person outcomes.
    std::vector<AggregateRow> aggregate_by_location(const std::vector<ScenarioOutcome> &outcomes);
    std::string aggregate_csv(const std::vector<AggregateRow> &rows);

    /*!
     * campaign: one shared no-person baseline, then synth + analyze + diff for every code
     * on a worker pool. Each scenario writes only below scenarios/<code>/; scenarios.csv,
     * aggregate.csv and failures.csv are written single-threaded at the end. Failed
     * scenarios are recorded and the run continues.
     */
    CampaignReport cmd_campaign(const std::vector<ScenarioCode> &codes, const SceneDocument &doc,
                                const CampaignOptions &opts, const std::filesystem::path &out_dir);
}
