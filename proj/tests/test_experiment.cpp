// Copyright 2026 The evq contributors.
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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "evq/experiment.hpp"

using evq::ExperimentConfig;
using evq::ExperimentResult;
using evq::ResultRow;

namespace {

std::string small_ring_config(const std::string &noise, const std::string &mode) {
    return std::string(R"({
        "model": {"lattice": {"kind": "ring", "size": 6}, "j": 1.0, "h": 2.0},
        "plan": {"steps": 3, "tau": 0.05, "site": 0},
        "mode": ")") +
           mode + R"(",
        "noise": )" + noise +
           R"(,
        "shots_per_step": 3000,
        "cdr": {"l": 1, "m_count": 8, "resamples": 50},
        "variants": ["standard", "evcdr"],
        "realizations": 2,
        "seed": 77
    })";
}

}  // namespace

TEST_CASE("config parsing and validation") {
    const ExperimentConfig config =
        evq::config_from_json_text(small_ring_config(R"({"kind": "none"})", "sampled"));
    CHECK(config.lattice.n_nodes == 6);
    CHECK(config.steps == 3);
    CHECK(config.tau == doctest::Approx(0.05));
    CHECK(config.resolved_site() == 0);
    CHECK(config.variants.size() == 2);
    CHECK(config.realizations == 2);
    CHECK(config.seed == 77);

    CHECK_THROWS_AS(evq::config_from_json_text("{not json"), evq::ConfigError);
    CHECK_THROWS_AS(evq::config_from_json_text("{}"), evq::ConfigError);
    CHECK_THROWS_AS(evq::config_from_json_text(
                        R"({"model": {"lattice": {"kind": "moebius"}, "j": 1, "h": 1},
                            "plan": {"steps": 1, "tau": 0.1}})"),
                    evq::ConfigError);
    CHECK_THROWS_AS(evq::config_from_json_text(
                        R"({"model": {"lattice": {"kind": "ring", "size": 6}, "j": 1, "h": 1},
                            "plan": {"steps": 0, "tau": 0.1}})"),
                    evq::ConfigError);
    CHECK_THROWS_AS(evq::config_from_json_text(
                        R"({"model": {"lattice": {"kind": "ring", "size": 6}, "j": 1, "h": 1},
                            "plan": {"steps": 2, "tau": 0.1, "site": 9}})"),
                    evq::ConfigError);
    CHECK_THROWS_AS(
        evq::config_from_json_text(
            R"({"model": {"lattice": {"kind": "ring", "size": 6}, "j": 1, "h": 1},
                "plan": {"steps": 2, "tau": 0.1}, "noise": {"kind": "depolarizing", "p1": 1.5}})"),
        evq::ConfigError);
}

TEST_CASE("center site resolution picks the unique heavy-hex 4-cell center") {
    ExperimentConfig config;
    config.lattice = evq::heavy_hex_lattice(4);
    config.site = -1;
    CHECK(config.resolved_site() == 8);
}

TEST_CASE("zero-noise run matches the exact reference within sampling error") {
    const ExperimentConfig config =
        evq::config_from_json_text(small_ring_config(R"({"kind": "none"})", "sampled"));
    const ExperimentResult result = evq::run_experiment(config);
    REQUIRE(!result.rows.empty());
    CHECK(result.skipped_steps.empty());
    for (const ResultRow &row : result.rows) {
        CHECK(row.error() < 0.15);
        CHECK(row.p0 > 0.2);
    }
}

TEST_CASE("postselection probability decays under depolarizing noise") {
    const ExperimentConfig config = evq::config_from_json_text(R"({
        "model": {"lattice": {"kind": "ring", "size": 6}, "j": 1.0, "h": 2.0},
        "plan": {"steps": 4, "tau": 0.05, "site": 0},
        "mode": "exact",
        "noise": {"kind": "depolarizing", "p1": 0.003, "p2": 0.02},
        "variants": ["standard"],
        "seed": 5
    })");
    const ExperimentResult result = evq::run_experiment(config);
    REQUIRE(result.rows.size() == 4);
    for (std::size_t i = 1; i < result.rows.size(); ++i)
        CHECK(result.rows[i].p0 < result.rows[i - 1].p0);
}

TEST_CASE("identical config and seed give bit-identical CSV output") {
    const ExperimentConfig config = evq::config_from_json_text(
        small_ring_config(R"({"kind": "depolarizing", "p1": 0.002, "p2": 0.01})", "sampled"));
    const std::string first = evq::rows_to_csv(evq::run_experiment(config, 1).rows);
    const std::string second = evq::rows_to_csv(evq::run_experiment(config, 4).rows);
    CHECK(first == second);
    CHECK(first.substr(0, first.find('\n')) ==
          "t,variant,estimate,variance,error,p0,purity,realization");
}

TEST_CASE("serialization round trip and empty-row rejection") {
    const ExperimentConfig config =
        evq::config_from_json_text(small_ring_config(R"({"kind": "none"})", "sampled"));
    const ExperimentResult result = evq::run_experiment(config);
    const auto parsed = evq::rows_from_json_text(evq::rows_to_json(result.rows));
    REQUIRE(parsed.size() == result.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].t == result.rows[i].t);
        CHECK(parsed[i].variant == result.rows[i].variant);
        CHECK(parsed[i].estimate == result.rows[i].estimate);
        CHECK(parsed[i].exact == result.rows[i].exact);
        CHECK(parsed[i].realization == result.rows[i].realization);
    }
    CHECK_THROWS(evq::rows_to_csv({}));
    CHECK_THROWS(evq::rows_to_json({}));
}

TEST_CASE("oracle rows report the Trotter reference and the continuum value") {
    const ExperimentConfig config =
        evq::config_from_json_text(small_ring_config(R"({"kind": "none"})", "sampled"));
    const ExperimentResult result = evq::oracle_rows(config);
    REQUIRE(result.rows.size() == 2 * config.steps);
    for (std::size_t i = 0; i < result.rows.size(); i += 2) {
        CHECK(result.rows[i].variant == "trotter");
        CHECK(result.rows[i].error() == 0);
        CHECK(result.rows[i + 1].variant == "continuum");
        CHECK(result.rows[i + 1].error() < 0.02);  // small-tau Trotter error
    }
}

TEST_CASE("exact-mode terminal depolarizing run is recovered by EVCDR") {
    const ExperimentConfig config = evq::config_from_json_text(R"({
        "model": {"lattice": {"kind": "ring", "size": 6}, "j": 1.0, "h": 2.0},
        "plan": {"steps": 3, "tau": 0.05, "site": 0},
        "mode": "exact",
        "noise": {"kind": "terminal_depolarizing", "delta": 0.3},
        "cdr": {"l": 2, "m_count": 12, "weighting": "ols"},
        "variants": ["standard", "evcdr"],
        "seed": 9
    })");
    const ExperimentResult result = evq::run_experiment(config);
    REQUIRE(result.rows.size() == 6);
    for (const ResultRow &row : result.rows)
        if (row.variant == "evcdr") CHECK(row.error() < 1e-7);
}
