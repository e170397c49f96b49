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
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evq/cdr.hpp"
#include "evq/ev.hpp"
#include "evq/ising.hpp"

namespace evq {

/// Configuration problems detected before any simulation starts.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { sampled, exact };
enum class NoiseKind { none, depolarizing, terminal_depolarizing };

/// One full experiment: Trotterized Ising EV runs over a range of time steps,
/// with noise realizations emulating hardware tiling.
struct ExperimentConfig {
    SpinLattice lattice;
    double j_coupling = 1;
    double h_field = 1;

    unsigned steps = 1;    // time steps probed: t = k * tau for k = 1..steps
    double tau = 0.1;
    int site = -1;         // measured site; -1 selects a lattice center

    RunMode mode = RunMode::sampled;
    NoiseKind noise = NoiseKind::none;
    double p1 = 0, p2 = 0;  // per-gate depolarizing strengths
    double delta = 0;       // terminal depolarizing rate

    std::size_t shots_per_step = 80000;  // split across bases and realizations

    unsigned max_hamming = 0;            // postselection tolerance
    bool neighborhood_only = false;      // restrict the zero check to the
                                         // measured site and its neighbors

    unsigned cdr_l = 2;
    unsigned cdr_m_count = 30;
    FitWeighting cdr_weighting = FitWeighting::wls;
    std::size_t cdr_resamples = 200;
    std::size_t cdr_shots_per_basis = 0;  // 0: same as the main circuit

    std::vector<EstimatorVariant> variants{EstimatorVariant::standard,
                                           EstimatorVariant::evcdr};
    unsigned realizations = 1;
    uint64_t seed = 1;

    /// The measured site with site = -1 resolved (minimum graph eccentricity,
    /// lowest index tie-break).
    unsigned resolved_site() const;
};

/// Parses and validates a JSON config document; throws ConfigError with the
/// offending key in the message.
ExperimentConfig config_from_json_text(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// One estimate at one time step for one noise realization; `error()` is
/// always recomputed against the stored reference.
struct ResultRow {
    double t = 0;
    std::string variant;
    double estimate = 0;
    double variance = 0;
    double exact = 0;  // noiseless circuit reference value
    double p0 = 0;
    double purity = 0;
    unsigned realization = 0;

    double error() const;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<unsigned> skipped_steps;  // postselection annihilated
};

/// Runs the configured pipeline. Output is a deterministic function of the
/// config alone; n_threads only affects wall time.
ExperimentResult run_experiment(const ExperimentConfig &config, unsigned n_threads = 0);

/// Exact references only: a "trotter" row per step with the noiseless circuit
/// value, and a "continuum" row with the exact magnetization, whose error
/// column then reads the Trotter error.
ExperimentResult oracle_rows(const ExperimentConfig &config);

/// Header `t,variant,estimate,variance,error,p0,purity,realization`, one line
/// per row, shortest round-trippable number formatting. Throws on empty rows.
std::string rows_to_csv(const std::vector<ResultRow> &rows);
std::string rows_to_json(const std::vector<ResultRow> &rows);
std::vector<ResultRow> rows_from_json_text(const std::string &text);

}  // namespace evq
