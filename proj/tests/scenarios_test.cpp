// Copyright 2026 The relborn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relborn/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "relborn/config.hpp"
#include "relborn/emit.hpp"
#include "support/random_objects.hpp"

namespace relborn {
namespace {

using Json = nlohmann::json;

std::string config_path(const std::string& name) {
    return std::string(RELBORN_CONFIG_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Structural equality with an absolute tolerance on numbers.
void expect_json_near(const Json& got, const Json& want, const std::string& path = "$") {
    if (want.is_number() && got.is_number()) {
        EXPECT_NEAR(got.get<double>(), want.get<double>(), 1e-12) << path;
        return;
    }
    ASSERT_EQ(got.type_name(), std::string(want.type_name())) << path;
    if (want.is_object()) {
        ASSERT_EQ(got.size(), want.size()) << path;
        for (auto it = want.begin(); it != want.end(); ++it) {
            ASSERT_TRUE(got.contains(it.key())) << path << "." << it.key();
            expect_json_near(got[it.key()], it.value(), path + "." + it.key());
        }
    } else if (want.is_array()) {
        ASSERT_EQ(got.size(), want.size()) << path;
        for (std::size_t i = 0; i < want.size(); ++i) {
            expect_json_near(got[i], want[i], path + "[" + std::to_string(i) + "]");
        }
    } else {
        EXPECT_EQ(got, want) << path;
    }
}

void expect_verdict_matches_battery(const RunReport& r) {
    ASSERT_TRUE(r.ch.has_value());
    EXPECT_EQ(r.verdict.feasible(), !r.ch->any_violated) << r.scenario;
}

TEST(RunHardy, TablesAndVerdict) {
    const RunReport r = run_hardy();
    EXPECT_EQ(r.scenario, "hardy");
    EXPECT_NEAR(r.tables.alpha.at("+", "+"), 1.0 / 12, 1e-12);
    EXPECT_NEAR(r.tables.gamma.at("+", "+"), 0.0, 1e-12);
    EXPECT_NEAR(r.tables.delta.at("+", "+"), 0.0, 1e-12);
    EXPECT_NEAR(r.tables.beta.at("-", "-"), 0.0, 1e-12);
    EXPECT_NEAR(r.tables.beta.at("+", "+"), 1.0 / 3, 1e-12);
    EXPECT_NEAR(r.tables.delta.at("-", "+"), 2.0 / 3, 1e-12);
    EXPECT_TRUE(r.no_signaling.passed);
    EXPECT_TRUE(r.overlap.passed);
    EXPECT_FALSE(r.verdict.feasible());
    expect_verdict_matches_battery(r);
    EXPECT_FALSE(r.timing_ms.has_value());
}

TEST(RunHardy, ForcedValueChain) {
    const RunReport r = run_hardy();
    ASSERT_EQ(r.forced_values.size(), 3u);
    EXPECT_EQ(r.forced_values[0], "A1=+ forces B2=- (delta)");
    EXPECT_EQ(r.forced_values[1], "A2=+ forces B1=- (gamma)");
    EXPECT_NE(r.forced_values[2].find("no joint distribution"), std::string::npos);
}

TEST(RunAncilla, BlockSpectra) {
    const RunReport r = run_ancilla();
    const double hi = (1 + std::sqrt(5.0) / 3) / 2, lo = (1 - std::sqrt(5.0) / 3) / 2;
    ASSERT_EQ(r.spectra.size(), 4u);
    for (const SurfaceSpectrum& s : r.spectra) {
        for (std::size_t b = 0; b < 2; ++b) {
            const auto& ev = s.eigenvalues[b];
            ASSERT_EQ(ev.size(), 4u);
            EXPECT_NEAR(ev[0], hi, 1e-12) << to_string(s.surface);
            EXPECT_NEAR(ev[1], lo, 1e-12) << to_string(s.surface);
            EXPECT_NEAR(ev[2], 0.0, 1e-12);
            EXPECT_NEAR(ev[3], 0.0, 1e-12);
            ASSERT_TRUE(s.min_gap[b].has_value());
            EXPECT_NEAR(*s.min_gap[b], std::sqrt(5.0) / 3, 1e-12);
            EXPECT_LT(s.max_leakage[b], 1e-12);
        }
    }
}

TEST(RunAncilla, SameTablesAsHardy) {
    const RunReport a = run_ancilla(), h = run_hardy();
    for (Surface s : kAllSurfaces) {
        for (const auto& [key, p] : h.tables[s].probs) {
            EXPECT_NEAR(a.tables[s].at(key.first, key.second), p, 1e-12);
        }
    }
    EXPECT_FALSE(a.verdict.feasible());
    EXPECT_TRUE(a.no_signaling.passed);
    expect_verdict_matches_battery(a);
}

TEST(Sweep, PointValues) {
    const SweepRow eighth = singlet_sweep_point(std::numbers::pi / 8);
    EXPECT_NEAR(eighth.s, 1.1035533905932737, 1e-10);
    EXPECT_FALSE(eighth.lp_feasible);
    const SweepRow zero = singlet_sweep_point(0.0);
    EXPECT_NEAR(zero.s, 1.0, 1e-12);
    EXPECT_TRUE(zero.lp_feasible);
}

TEST(Sweep, GridAndClosedForm) {
    const SweepReport r = run_singlet_sweep(0.0, std::numbers::pi / 2, 101);
    ASSERT_EQ(r.rows.size(), 101u);
    EXPECT_EQ(r.rows.front().phi, 0.0);
    EXPECT_EQ(r.rows.back().phi, std::numbers::pi / 2);
    for (const SweepRow& row : r.rows) {
        const double c = std::cos(row.phi), s2 = std::sin(2 * row.phi);
        EXPECT_NEAR(row.s, c * c + 0.5 * s2 * s2, 1e-10) << row.phi;
        EXPECT_LT(row.max_consistency_deviation, 1e-10);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeRows) {
    const SweepReport one = run_singlet_sweep(0.0, 1.5, 37, kFeasibilityTol, 1);
    const SweepReport many = run_singlet_sweep(0.0, 1.5, 37, kFeasibilityTol, 5);
    EXPECT_EQ(render(one, Format::kCsv), render(many, Format::kCsv));
}

TEST(Sweep, RejectsBadArguments) {
    EXPECT_THROW(run_singlet_sweep(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(run_singlet_sweep(1.0, 1.0, 10), std::invalid_argument);
}

TEST(Sweep, InfeasibleAwayFromClassicalPoints) {
    // The tables admit a joint distribution only at phi = 0, pi/4, pi/2 on
    // [0, pi/2]; beyond pi/4 the violated inequalities are ones whose
    // four-term combination S stays inside [0, 1].
    const SweepReport r = run_singlet_sweep(0.0, std::numbers::pi / 2, 81);
    for (const SweepRow& row : r.rows) {
        const double d = std::min({row.phi, std::abs(row.phi - std::numbers::pi / 4),
                                   std::numbers::pi / 2 - row.phi});
        if (d < 1e-6) {
            EXPECT_TRUE(row.lp_feasible) << row.phi;
        } else {
            EXPECT_FALSE(row.lp_feasible) << row.phi;
            EXPECT_GT(row.max_ch, 1.0) << row.phi;
        }
        // S > 1 exactly on the open interval (0, pi/4).
        const bool s_violates = row.s > 1 + 1e-9;
        EXPECT_EQ(s_violates, row.phi > 1e-6 && row.phi < std::numbers::pi / 4 - 1e-6) << row.phi;
    }
}

TEST(RunCustom, HardyConfigMatchesBuiltIn) {
    const RunReport built_in = run_hardy(), custom = run_custom(config_path("hardy.yaml"));
    for (Format f : {Format::kText, Format::kCsv, Format::kJson}) {
        EXPECT_EQ(render(custom, f), render(built_in, f));
    }
}

TEST(RunCustom, DephasingVerdictMatchesBattery) {
    const RunReport r = run_custom(config_path("dephasing.yaml"));
    EXPECT_EQ(r.scenario, "hardy-dephasing");
    expect_verdict_matches_battery(r);
    EXPECT_TRUE(r.no_signaling.passed);
    if (r.verdict.feasible()) {
        const FeasibilityProblem p = assemble_problem(r.tables);
        EXPECT_TRUE(verify_witness(p, r.verdict.witness).passed);
    }
}

TEST(RunCustom, ExplicitSingletUnitaries) {
    const RunReport r = run_custom(config_path("singlet_explicit.yaml"));
    EXPECT_FALSE(r.verdict.feasible());
    ASSERT_TRUE(r.ch.has_value());
    EXPECT_NEAR(r.ch->max_value.value, 1.1035533905932737, 1e-10);
}

TEST(RunCustom, BadNorm) {
    try {
        run_custom(config_path("bad_norm.yaml"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 4);
        EXPECT_NE(std::string(e.what()).find("bad_norm.yaml:4:"), std::string::npos) << e.what();
    }
}

TEST(RunCustom, RandomScenariosVerdictMatchesBattery) {
    testing::Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const RunReport r =
            run_scenario("random", testing::random_binary_scenario(rng, trial % 2 == 0));
        if (std::abs(r.ch->most_violated.violation) < 1e-7) continue;
        expect_verdict_matches_battery(r);
    }
}

TEST(Config, LocatedErrors) {
    auto line_of = [](const std::string& text) {
        try {
            build_scenario(parse_config(text, "t.yaml"));
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    const std::string head =
        "dims: [2, 2]\n"                       // 1
        "state: [1, 0, 0, 0]\n";               // 2
    const std::string obs =
        "observables:\n"
        "  - {labels: [a, b], eigenvalues: [1, -1]}\n"
        "  - {labels: [a, b], eigenvalues: [1, -1]}\n";
    EXPECT_EQ(line_of(head + "channels: [identity, identity]\n" + obs), -1);
    EXPECT_EQ(line_of(head + "channels:\n  - identity\n  - teleport\n" + obs), 5);
    EXPECT_EQ(line_of(head + "channels:\n  - identity\n  - dephasing:x\n" + obs), 5);
    EXPECT_EQ(line_of(head + "channels:\n  - identity\n  - {kraus: [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]}\n" + obs), 5);
    EXPECT_EQ(line_of(head + "channels:\n  - identity\n  - {unitary: [[1, 0], [0]]}\n" + obs), 5);
    EXPECT_EQ(line_of(head + "channels: [identity, identity]\n" +
                      "observables:\n  - {labels: [a, b], eigenvalues: [1, 1]}\n"
                      "  - {labels: [a, b], eigenvalues: [1, -1]}\n"),
              5);
    EXPECT_EQ(line_of("dims: [2, 2]\nstate: [1, 0, 0]\nchannels: [identity, identity]\n" + obs), 2);
    EXPECT_EQ(line_of("dims: [2, 1]\nstate: [1, 0]\nchannels: [identity, identity]\n" + obs), 1);
    EXPECT_EQ(line_of(head + obs), 1);
    EXPECT_EQ(line_of("dims: [2, 2\n"), 2);
    EXPECT_THROW(load_config("/nonexistent/relborn.yaml"), ConfigError);
}

TEST(Emit, JsonShape) {
    const Json j = Json::parse(render(run_hardy(), Format::kJson));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"ch_max", "consistency", "scenario", "tables",
                                              "timing", "verdict"}));
    EXPECT_TRUE(j["timing"].is_null());
    EXPECT_EQ(j["verdict"]["status"], "infeasible");
    EXPECT_TRUE(j["verdict"]["witness"].is_null());
    EXPECT_EQ(j["tables"].size(), 4u);

    const Json a = Json::parse(render(run_ancilla(), Format::kJson));
    EXPECT_EQ(a["spectra"].size(), 4u);
    const Json s = Json::parse(render(run_singlet_sweep(0.0, 1.0, 5), Format::kJson));
    EXPECT_EQ(s["sweep"]["rows"].size(), 5u);
}

TEST(Emit, JsonRoundTrip) {
    for (const std::string& text : {render(run_hardy(), Format::kJson),
                                    render(run_custom(config_path("dephasing.yaml")), Format::kJson),
                                    render(run_singlet_sweep(0.0, 1.5, 7), Format::kJson)}) {
        EXPECT_EQ(Json::parse(text).dump(2) + "\n", text);
    }
}

TEST(Emit, MatchesGolden) {
    const Json golden = Json::parse(read_file(std::string(RELBORN_GOLDEN_DIR) + "/hardy.json"));
    expect_json_near(Json::parse(render(run_hardy(), Format::kJson)), golden);
    // The golden file itself carries the exact table values.
    const Json& alpha = golden["tables"][0];
    EXPECT_EQ(alpha["surface"], "alpha");
    EXPECT_NEAR(alpha["entries"][0]["probability"].get<double>(), 1.0 / 12, 1e-12);
}

TEST(Emit, Csv) {
    const std::string csv = render(run_hardy(), Format::kCsv);
    EXPECT_EQ(csv.rfind(std::string(kTableCsvHeader) + "\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
    EXPECT_EQ(csv.find('\r'), std::string::npos);

    const std::string sweep = render(run_singlet_sweep(0.0, 1.0, 23), Format::kCsv);
    EXPECT_EQ(sweep.rfind("phi,S,max_ch,lp_feasible\n", 0), 0u);
    EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 24);
}

TEST(Emit, Deterministic) {
    for (Format f : {Format::kText, Format::kCsv, Format::kJson}) {
        EXPECT_EQ(render(run_hardy(), f), render(run_hardy(), f));
        EXPECT_EQ(render(run_singlet_sweep(0.0, 1.5, 31), f), render(run_singlet_sweep(0.0, 1.5, 31), f));
    }
}

TEST(Emit, FormatNames) {
    EXPECT_EQ(parse_format("json"), Format::kJson);
    EXPECT_EQ(parse_format("csv"), Format::kCsv);
    EXPECT_EQ(parse_format("text"), Format::kText);
    EXPECT_FALSE(parse_format("xml").has_value());
}

}  // namespace
}  // namespace relborn
