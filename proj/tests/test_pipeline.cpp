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
#include <sstream>

#include <json.hpp>

#include "mmisac/errors.hpp"
#include "mmisac/pipeline.hpp"
#include "mmisac/scenario.hpp"
#include "oracles.hpp"

using namespace mmisac;
namespace fs = std::filesystem;

namespace
{
    fs::path fresh(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / "mmisac_test_pipeline" / name;
        fs::remove_all(dir);
        return dir;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string digest_of(const RunManifest &m, const std::string &file)
    {
        for (const ArtifactRecord &a : m.artifacts)
            if (a.path == file)
                return a.sha256;
        return {};
    }
}

TEST_CASE("SHA-256 test vectors")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("synth writes eight tensors and a reproducible manifest")
{
    const SceneDocument doc = default_scene_document();
    const fs::path a = fresh("synth_a"), b = fresh("synth_b"), c = fresh("synth_c");
    const RunManifest ma = cmd_synth(doc, ScenarioCode{}, a);
    const RunManifest mb = cmd_synth(doc, ScenarioCode{}, b);
    REQUIRE(ma.artifacts.size() == 8);
    for (Link l : kLinks)
        for (Band band : kBands)
            CHECK(fs::exists(a / tensor_file_name(l, band)));
    CHECK(tensor_file_name(Link::Tx1Rx2, Band::B60) == "Tx1Rx2_60GHz.ctf");
    CHECK(ma.to_json() == mb.to_json());
    CHECK_NOTHROW(verify_manifest(ma, a));

    const RunManifest parsed = RunManifest::from_json(slurp(a / "manifest.json"));
    CHECK(parsed.to_json() == ma.to_json());
    CHECK(parsed.seed == doc.scene.seed);

    const RunManifest mc = cmd_synth(doc, parse_scenario_code("A11"), c);
    CHECK(mc.scenario == "A11");
    CHECK(digest_of(mc, "Tx1Rx2_60GHz.ctf") != digest_of(ma, "Tx1Rx2_60GHz.ctf"));
    CHECK(digest_of(mc, "Tx1Rx2_24GHz.ctf") != digest_of(ma, "Tx1Rx2_24GHz.ctf"));

    // Tampering is detected.
    {
        std::ofstream out(a / "Tx1Rx1_24GHz.ctf", std::ios::binary | std::ios::app);
        out << 'x';
    }
    CHECK_THROWS_AS(verify_manifest(ma, a), IOError);
}

TEST_CASE("analyze exports and the LOS delay")
{
    const SceneDocument doc = default_scene_document();
    const fs::path in = fresh("an_in"), out = fresh("an_out");
    cmd_synth(doc, ScenarioCode{}, in);
    const auto metrics = cmd_analyze(in, kDefaultThresholdDb, out);
    REQUIRE(metrics.size() == 8);
    for (const MetricSet &m : metrics)
        CHECK(std::isfinite(m.rms_ds));

    const nlohmann::json summary = nlohmann::json::parse(slurp(out / "summary.json"));
    REQUIRE(summary["metrics"].size() == 8);
    for (const auto &entry : summary["metrics"])
    {
        const Link link = parse_link(entry["link"].get<std::string>());
        const Band band = parse_band(entry["band"].get<std::string>());
        const Scene &s = doc.scene;
        const double los = (s.tx_site(link).position[band] - s.rx_site(link).position[band]).norm();
        const double dt = band_config(band).delay_bin_width();
        // The earliest PDP peak is the LOS tap: within half a bin of distance / c.
        const auto pdp = metrics[static_cast<std::size_t>(link) * 2 + static_cast<std::size_t>(band)].pdp;
        std::size_t first_peak = 0;
        const double top = *std::max_element(pdp.begin(), pdp.end());
        while (!(pdp[first_peak] > 0.1 * top && pdp[first_peak] >= pdp[first_peak + 1]))
            ++first_peak;
        CHECK(entry["rms_ds_s"].get<double>() > 0.0);
        if (link == Link::Tx1Rx1 || link == Link::Tx2Rx2)
            continue; // the direct path of the side links lies outside the beam grid
        CHECK(std::abs(static_cast<double>(first_peak) - los / kSpeedOfLight / dt) <= 0.5 + 1e-9);
    }
    CHECK(fs::exists(out / "Tx1Rx2_60GHz_profiles.csv"));
    CHECK(fs::exists(out / "Tx1Rx2_60GHz_adps_rx.csv"));

    std::ifstream profiles(out / "Tx2Rx1_24GHz_profiles.csv");
    std::string header;
    std::getline(profiles, header);
    CHECK(header == "index,delay_s,pdp,tx_angle_rad,pap_tx,rx_angle_rad,pap_rx");

    CHECK_THROWS_AS(cmd_analyze(in, 0.0, fresh("an_zero")), EmptyProfile);
}

TEST_CASE("missing or corrupt tensors are named")
{
    const fs::path in = fresh("corrupt");
    cmd_synth(default_scene_document(), ScenarioCode{}, in);
    fs::remove(in / "Tx2Rx2_60GHz.ctf");
    try
    {
        read_tensor_set(in);
        FAIL("expected IOError");
    }
    catch (const IOError &e)
    {
        CHECK(std::string(e.what()).find("Tx2Rx2_60GHz.ctf") != std::string::npos);
    }
    std::ofstream(in / "Tx2Rx2_60GHz.ctf", std::ios::binary) << "CTF1";
    CHECK_THROWS_AS(read_tensor_set(in), IOError);
}

TEST_CASE("diff properties")
{
    const SceneDocument doc = default_scene_document();
    const fs::path base = fresh("diff_base"), a11 = fresh("diff_a11");
    cmd_synth(doc, ScenarioCode{}, base);
    cmd_synth(doc, parse_scenario_code("A11"), a11);

    const auto same = cmd_diff(base, base, kDefaultThresholdDb, fresh("diff_same"));
    for (const DeltaMetrics &d : same)
    {
        CHECK(d.d_rms_ds == 0.0);
        CHECK(d.d_asd == 0.0);
        CHECK(d.d_asa == 0.0);
    }

    const fs::path out = fresh("diff_out");
    const auto fwd = cmd_diff(a11, base, kDefaultThresholdDb, out);
    const auto rev = cmd_diff(base, a11, kDefaultThresholdDb, fresh("diff_rev"));
    for (std::size_t i = 0; i < fwd.size(); ++i)
    {
        CHECK(fwd[i].d_rms_ds == -rev[i].d_rms_ds);
        CHECK(fwd[i].d_asd == -rev[i].d_asd);
    }
    for (Band b : kBands)
        CHECK(fwd[static_cast<std::size_t>(Link::Tx1Rx2) * 2 + static_cast<std::size_t>(b)].d_rms_ds > 0.0);

    // Heatmaps are cut at 30 m.
    std::ifstream heat(out / "Tx1Rx2_60GHz_adps_delta_rx.csv");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(heat, line))
        ++rows;
    CHECK(rows == 41);
    CHECK(fs::exists(out / "delta_summary.csv"));
}

TEST_CASE("median agrees with a sort-based oracle")
{
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    for (std::size_t n = 1; n <= 40; ++n)
    {
        std::vector<double> v(n);
        for (double &x : v)
            x = g(rng);
        CHECK(median(v) == oracle::sorted_median(v));
    }
    CHECK_THROWS_AS(median({}), DomainError);
}

TEST_CASE("aggregate groups single-person outcomes by location")
{
    std::vector<ScenarioOutcome> outcomes;
    for (int orient = 1; orient <= 3; ++orient)
    {
        ScenarioOutcome o;
        o.code = "A2" + std::to_string(orient);
        o.ok = true;
        DeltaMetrics d;
        d.link = Link::Tx2Rx1;
        d.band = Band::B24;
        d.d_rms_ds = orient * 1e-9;
        o.deltas.push_back(d);
        outcomes.push_back(o);
    }
    ScenarioOutcome two;
    two.code = "A21_B31";
    two.ok = true;
    two.deltas = outcomes[0].deltas;
    outcomes.push_back(two);
    ScenarioOutcome failed;
    failed.code = "A24";
    outcomes.push_back(failed);

    const auto rows = aggregate_by_location(outcomes);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].location == 2);
    CHECK(rows[0].count == 3);
    CHECK(rows[0].median_d_rms_ds == 2e-9);
    CHECK(aggregate_csv(rows).rfind("location,link,band,count,", 0) == 0);
}

TEST_CASE("small campaign layout and failure handling")
{
    const SceneDocument doc = default_scene_document();
    const std::vector<ScenarioCode> codes{parse_scenario_code("A51"), parse_scenario_code("A55"),
                                          parse_scenario_code("A11_B51")};
    CampaignOptions opts;
    opts.jobs = 2;
    const fs::path out = fresh("campaign");
    const CampaignReport r = cmd_campaign(codes, doc, opts, out);
    CHECK(r.failures == 0);
    CHECK(r.aggregate.size() == 8); // Loc5 x 4 links x 2 bands
    for (const AggregateRow &row : r.aggregate)
        CHECK(row.count == 2);
    CHECK(fs::exists(out / "scenarios" / "000_A51" / "diff" / "delta_summary.csv"));
    CHECK(fs::exists(out / "scenarios" / "002_A11_B51" / "analysis" / "summary.json"));
    CHECK_FALSE(fs::exists(out / "scenarios" / "000_A51" / "ctf"));
    CHECK(fs::exists(out / "baseline" / "ctf" / "manifest.json"));
    const RunManifest m = RunManifest::from_json(slurp(out / "manifest.json"));
    CHECK_NOTHROW(verify_manifest(m, out));

    // A person standing on a site fails that scenario only.
    SceneDocument crowded = doc;
    crowded.locations.coordinates[7] = crowded.scene.tx[0].position.b60;
    crowded.locations.coordinates[7].z() = 0.0;
    const fs::path out2 = fresh("campaign_fail");
    const CampaignReport r2 = cmd_campaign({parse_scenario_code("A81"), parse_scenario_code("A51")}, crowded, opts, out2);
    CHECK(r2.failures == 1);
    CHECK_FALSE(r2.outcomes[0].ok);
    CHECK(r2.outcomes[1].ok);
    CHECK(slurp(out2 / "failures.csv").find("A81") != std::string::npos);

    const CampaignReport empty = cmd_campaign({}, doc, opts, fresh("campaign_empty"));
    CHECK(empty.aggregate.empty());
    CHECK(empty.failures == 0);
}
