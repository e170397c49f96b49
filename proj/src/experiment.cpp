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
#include "evq/experiment.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "evq/rng.hpp"
#include "evq/sampling.hpp"
#include "evq/statevector.hpp"

namespace evq {

namespace {

using nlohmann::json;

/// Independent per-purpose seed derived from (config seed, step, purpose).
uint64_t derive_seed(uint64_t seed, uint64_t step, uint64_t purpose) {
    SplitMix64 g(seed, step * 4096 + purpose);
    return g.next();
}

unsigned graph_center(const SpinLattice &lattice) {
    unsigned best = 0, best_ecc = ~0u;
    for (unsigned s = 0; s < lattice.n_nodes; ++s) {
        std::vector<int> dist(lattice.n_nodes, -1);
        std::deque<unsigned> frontier{s};
        dist[s] = 0;
        unsigned ecc = 0;
        while (!frontier.empty()) {
            const unsigned v = frontier.front();
            frontier.pop_front();
            ecc = std::max(ecc, unsigned(dist[v]));
            for (const unsigned w : lattice.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    frontier.push_back(w);
                }
            }
        }
        if (ecc < best_ecc) {
            best_ecc = ecc;
            best = s;
        }
    }
    return best;
}

double require_number(const json &node, const std::string &key) {
    if (!node.contains(key) || !node[key].is_number())
        throw ConfigError("missing or non-numeric field: " + key);
    return node[key].get<double>();
}

double number_or(const json &node, const std::string &key, double fallback) {
    if (!node.contains(key)) return fallback;
    if (!node[key].is_number()) throw ConfigError("non-numeric field: " + key);
    return node[key].get<double>();
}

double probability_or(const json &node, const std::string &key, double fallback) {
    const double p = number_or(node, key, fallback);
    if (p < 0 || p > 1) throw ConfigError(key + " must be in [0, 1]");
    return p;
}

unsigned positive_count(const json &node, const std::string &key, double fallback) {
    const double v = number_or(node, key, fallback);
    if (v < 1 || v != std::floor(v)) throw ConfigError(key + " must be a positive integer");
    return unsigned(v);
}

SpinLattice lattice_from_json(const json &node) {
    if (!node.contains("kind") || !node["kind"].is_string())
        throw ConfigError("model.lattice.kind must be a string");
    const std::string kind = node["kind"].get<std::string>();
    if (kind == "ring") return ring_lattice(positive_count(node, "size", 0));
    if (kind == "heavy_hex") return heavy_hex_lattice(positive_count(node, "cells", 0));
    if (kind == "edge_list") {
        if (!node.contains("edges") || !node["edges"].is_string())
            throw ConfigError("model.lattice.edges must be edge-list text");
        return lattice_from_edge_list(node["edges"].get<std::string>());
    }
    throw ConfigError("unknown lattice kind: " + kind);
}

/// The noiseless circuit value <0| U^dag V U |0> of a reduced EV instance.
double noiseless_value(const EvCircuit &ev) {
    if (ev.n_system > 24) throw std::domain_error("reduced support too large for reference");
    Statevector psi(ev.n_system);
    psi.apply(ev.u);
    Statevector phi = psi;
    phi.apply_pauli(ev.observable);
    double acc = 0;
    for (std::size_t i = 0; i < phi.amplitudes().size(); ++i)
        acc += (std::conj(psi.amplitudes()[i]) * phi.amplitudes()[i]).real();
    return acc;
}

std::vector<PauliChannel> build_channels(const ExperimentConfig &config, const Circuit &circuit,
                                         RunMode mode) {
    switch (config.noise) {
        case NoiseKind::none:
            return {};
        case NoiseKind::depolarizing:
            return with_depolarizing_noise(circuit, config.p1, config.p2).channels;
        case NoiseKind::terminal_depolarizing: {
            // Exact mode applies the global channel analytically; only the
            // trajectory sampler needs the enumerated branches.
            if (mode == RunMode::exact) return {};
            std::vector<PauliChannel> channels(circuit.gates.size(),
                                               PauliChannel::identity(circuit.n_qubits));
            if (channels.empty()) throw std::domain_error("terminal noise needs gates");
            channels.back() = PauliChannel::depolarizing(circuit.n_qubits, config.delta);
            return channels;
        }
    }
    return {};
}

/// Folds a global depolarizing channel into a noiseless exact-EV result:
/// every postselected numerator scales by 1 - delta and the projector picks
/// up 2 delta / d of identity mass (the ancilla Paulis are traceless).
ExactEvResult fold_terminal_depolarizing(ExactEvResult result, double delta, unsigned n_system) {
    const double dimension = double(std::size_t{1} << (n_system + 1));
    const double p0_noisy = (1 - delta) * result.p0 + 2 * delta / dimension;
    const double scale = (1 - delta) * result.p0 / p0_noisy;
    result.true_tomogram.e_x *= scale;
    result.true_tomogram.e_y *= scale;
    result.true_tomogram.e_z *= scale;
    result.true_tomogram.p0_hat = p0_noisy;
    result.linear_tomogram.e_x *= 1 - delta;
    result.linear_tomogram.e_y *= 1 - delta;
    result.linear_tomogram.e_z *= 1 - delta;
    result.p0 = p0_noisy;
    result.purity = result.true_tomogram.purity();
    return result;
}

PostselectionRule build_rule(const ExperimentConfig &config, const EvCircuit &ev) {
    PostselectionRule rule;
    rule.max_hamming = config.max_hamming;
    if (!config.neighborhood_only) {
        rule = PostselectionRule::exact(ev.n_system);
        rule.max_hamming = config.max_hamming;
        return rule;
    }
    const unsigned site = config.resolved_site();
    std::vector<unsigned> wanted = config.lattice.neighbors(site);
    wanted.push_back(site);
    for (unsigned i = 0; i < ev.n_system; ++i)
        if (std::find(wanted.begin(), wanted.end(), ev.original_sites[i]) != wanted.end())
            rule.neighborhood.push_back(i);
    return rule;
}

std::vector<int> outcomes_of(const std::vector<ShotRecord> &records) {
    std::vector<int> out;
    out.reserve(records.size());
    for (const ShotRecord &r : records) out.push_back(r.ancilla_outcome);
    return out;
}

/// First-order variance of e_z / (1 + e_x), forwarded into all variants.
double propagated_variance(const AncillaTomogram &t, double var_x, double var_z) {
    const double den = 1 + t.e_x;
    if (std::abs(den) < 1e-12) return 0;
    const double dz = 1 / den;
    const double dx = t.e_z / (den * den);
    return dz * dz * var_z + dx * dx * var_x;
}

/**
 * Regression with graceful degradation. When the training abscissae span a
 * usable interval the full affine fit is used: relaxed postselection admits
 * error branches that shift e_x by a genuine offset, so the intercept carries
 * signal. Clustered abscissae cannot pin an intercept, so the fit falls back
 * to the through-origin form matching the multiplicative damping of the
 * channel linearity formulas; degenerate or vanishing-slope fits reduce to
 * the identity map and EVCDR to the standard estimator.
 */
RegressionFit robust_fit(const std::vector<TrainingDatum> &data, FitAxis axis,
                         FitWeighting weighting) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const TrainingDatum &d : data) {
        const double a = axis == FitAxis::x ? d.noisy_x : d.noisy_z;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (hi - lo > 0.1) {
        try {
            const RegressionFit f = fit(data, axis, weighting, false);
            if (std::abs(f.slope) > 1e-6) return f;
        } catch (const std::exception &) {
        }
    }
    try {
        const RegressionFit f = fit(data, axis, weighting, true);
        if (std::abs(f.slope) > 1e-6) return f;
    } catch (const std::exception &) {
    }
    return RegressionFit{};
}

struct StepContext {
    EvCircuit ev;
    double reference = 0;
    std::vector<PauliChannel> channels;
    PostselectionRule rule;
};

StepContext make_step(const ExperimentConfig &config, unsigned step) {
    const IsingModel model{config.lattice, config.j_coupling, config.h_field};
    const unsigned site = config.resolved_site();
    const Circuit u = trotter_circuit(model, step, config.tau);
    const PauliString v = PauliString::single(u.n_qubits, site, 'Z');
    StepContext ctx;
    ctx.ev = lightcone_reduce(build_ev_circuit(u, v));
    ctx.reference = noiseless_value(ctx.ev);
    ctx.channels = build_channels(config, ctx.ev.circuit, config.mode);
    ctx.rule = build_rule(config, ctx.ev);
    return ctx;
}

void append_variant_rows(std::vector<ResultRow> &rows, const ExperimentConfig &config,
                         const StepContext &ctx, const AncillaTomogram &tomogram,
                         const AncillaTomogram &regression_tomogram, double p0, double purity,
                         double t, unsigned realization, double variance, double var_x,
                         double var_z, unsigned n_threads) {
    EstimatorContext est_ctx;
    est_ctx.dim = double(std::size_t{1} << (ctx.ev.n_system + 1));
    est_ctx.delta = config.noise == NoiseKind::terminal_depolarizing
                        ? config.delta
                        : std::clamp(estimate_depolarization_rate(tomogram, est_ctx.dim), 0.0,
                                     0.999999);
    est_ctx.variance = variance;

    for (const EstimatorVariant variant : config.variants) {
        ResultRow row;
        row.t = t;
        row.variant = variant_name(variant);
        row.exact = ctx.reference;
        row.p0 = p0;
        row.purity = purity;
        row.realization = realization;

        if (variant == EstimatorVariant::evcdr) {
            const auto specs =
                sample_training_set(ctx.ev, config.cdr_l, config.cdr_m_count,
                                    derive_seed(config.seed, rows.size(), 7 + realization));
            std::vector<TrainingDatum> data;
            for (std::size_t i = 0; i < specs.size(); ++i) {
                if (config.mode == RunMode::exact) {
                    TrainingDatum datum = evaluate_training_exact(ctx.ev, specs[i], ctx.channels);
                    if (config.noise == NoiseKind::terminal_depolarizing) {
                        datum.noisy_x *= 1 - config.delta;
                        datum.noisy_z *= 1 - config.delta;
                    }
                    data.push_back(datum);
                } else {
                    const std::size_t shots = config.cdr_shots_per_basis
                                                  ? config.cdr_shots_per_basis
                                                  : std::max<std::size_t>(
                                                        1, config.shots_per_step /
                                                               (3 * config.realizations));
                    data.push_back(evaluate_training_sampled(
                        ctx.ev, specs[i], config.p1, config.p2, ctx.rule, shots, config.seed,
                        derive_seed(config.seed, 1000 + realization, i), config.cdr_resamples,
                        15, n_threads));
                }
            }
            const bool wls = config.cdr_weighting == FitWeighting::wls &&
                             config.mode == RunMode::sampled;
            const FitWeighting weighting = wls ? FitWeighting::wls : FitWeighting::ols;
            const RegressionFit fit_x = robust_fit(data, FitAxis::x, weighting);
            const RegressionFit fit_z = robust_fit(data, FitAxis::z, weighting);
            const EstimatorResult res =
                evcdr_estimate(regression_tomogram, fit_x, fit_z, var_x, var_z);
            row.estimate = res.value;
            row.variance = res.variance;
        } else {
            const EstimatorResult res = estimate(tomogram, variant, est_ctx);
            row.estimate = res.value;
            row.variance = res.variance;
        }
        rows.push_back(row);
    }
}

}  // namespace

unsigned ExperimentConfig::resolved_site() const {
    if (site >= 0) return unsigned(site);
    return graph_center(lattice);
}

double ResultRow::error() const { return std::abs(estimate - exact); }

ExperimentConfig config_from_json_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config;

    if (!doc.contains("model") || !doc["model"].is_object())
        throw ConfigError("missing section: model");
    const json &model = doc["model"];
    if (!model.contains("lattice")) throw ConfigError("missing field: model.lattice");
    config.lattice = lattice_from_json(model["lattice"]);
    config.j_coupling = require_number(model, "j");
    config.h_field = require_number(model, "h");

    if (!doc.contains("plan") || !doc["plan"].is_object())
        throw ConfigError("missing section: plan");
    const json &plan = doc["plan"];
    config.steps = positive_count(plan, "steps", 0);
    config.tau = require_number(plan, "tau");
    if (config.tau <= 0) throw ConfigError("plan.tau must be positive");
    if (plan.contains("site")) {
        if (plan["site"].is_string() && plan["site"] == "center") {
            config.site = -1;
        } else if (plan["site"].is_number_integer()) {
            config.site = plan["site"].get<int>();
            if (config.site < 0 || unsigned(config.site) >= config.lattice.n_nodes)
                throw ConfigError("plan.site out of range");
        } else {
            throw ConfigError("plan.site must be an index or \"center\"");
        }
    }

    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "sampled") {
            config.mode = RunMode::sampled;
        } else if (mode == "exact") {
            config.mode = RunMode::exact;
        } else {
            throw ConfigError("mode must be \"sampled\" or \"exact\"");
        }
    }

    if (doc.contains("noise")) {
        const json &noise = doc["noise"];
        const std::string kind = noise.value("kind", "depolarizing");
        if (kind == "none") {
            config.noise = NoiseKind::none;
        } else if (kind == "depolarizing") {
            config.noise = NoiseKind::depolarizing;
            config.p1 = probability_or(noise, "p1", 0);
            config.p2 = probability_or(noise, "p2", 0);
        } else if (kind == "terminal_depolarizing") {
            config.noise = NoiseKind::terminal_depolarizing;
            config.delta = probability_or(noise, "delta", 0);
        } else {
            throw ConfigError("unknown noise kind: " + kind);
        }
    }

    if (doc.contains("shots_per_step"))
        config.shots_per_step = positive_count(doc, "shots_per_step", 0);

    if (doc.contains("postselection")) {
        const json &rule = doc["postselection"];
        config.max_hamming = unsigned(number_or(rule, "max_hamming", 0));
        const std::string hood = rule.value("neighborhood", "all");
        if (hood == "measured_site") {
            config.neighborhood_only = true;
        } else if (hood != "all") {
            throw ConfigError("postselection.neighborhood must be \"all\" or \"measured_site\"");
        }
    }

    if (doc.contains("cdr")) {
        const json &cdr = doc["cdr"];
        config.cdr_l = unsigned(number_or(cdr, "l", 2));
        config.cdr_m_count = positive_count(cdr, "m_count", 30);
        config.cdr_resamples = positive_count(cdr, "resamples", 200);
        if (cdr.contains("shots_per_basis"))
            config.cdr_shots_per_basis = positive_count(cdr, "shots_per_basis", 0);
        const std::string weighting = cdr.value("weighting", "wls");
        if (weighting == "ols") {
            config.cdr_weighting = FitWeighting::ols;
        } else if (weighting == "wls") {
            config.cdr_weighting = FitWeighting::wls;
        } else {
            throw ConfigError("cdr.weighting must be \"ols\" or \"wls\"");
        }
    }

    if (doc.contains("variants")) {
        if (!doc["variants"].is_array() || doc["variants"].empty())
            throw ConfigError("variants must be a nonempty array");
        config.variants.clear();
        for (const json &name : doc["variants"]) {
            try {
                config.variants.push_back(variant_from_name(name.get<std::string>()));
            } catch (const std::exception &) {
                throw ConfigError("unknown estimator variant: " + name.dump());
            }
        }
    }

    if (doc.contains("realizations"))
        config.realizations = positive_count(doc, "realizations", 1);
    if (doc.contains("seed")) config.seed = doc["seed"].get<uint64_t>();
    return config;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

ExperimentResult run_experiment(const ExperimentConfig &config, unsigned n_threads) {
    ExperimentResult result;
    for (unsigned step = 1; step <= config.steps; ++step) {
        const double t = step * config.tau;
        const StepContext ctx = make_step(config, step);

        if (config.mode == RunMode::exact) {
            ExactEvResult exact = exact_ev(ctx.ev, ctx.channels);
            if (config.noise == NoiseKind::terminal_depolarizing)
                exact = fold_terminal_depolarizing(exact, config.delta, ctx.ev.n_system);
            append_variant_rows(result.rows, config, ctx, exact.true_tomogram,
                                exact.linear_tomogram, exact.p0, exact.purity, t, 0, 0, 0, 0,
                                n_threads);
            continue;
        }

        const std::size_t shots_per_basis = std::max<std::size_t>(
            1, config.shots_per_step / (3 * config.realizations));
        const NoisyCircuit noisy{ctx.ev.circuit, ctx.channels};
        bool any_kept = false;
        for (unsigned r = 0; r < config.realizations; ++r) {
            const uint64_t run_seed = derive_seed(config.seed, step, r);
            const SampledEvResult sampled = sample_ev(noisy, ctx.ev.ancilla_index(), ctx.rule,
                                                      shots_per_basis, run_seed, 0, true,
                                                      n_threads);
            if (sampled.tomogram.n_kept == 0) continue;
            any_kept = true;
            const double var_x = bootstrap_variance(outcomes_of(sampled.kept_x),
                                                    config.cdr_resamples,
                                                    derive_seed(run_seed, step, 1));
            const double var_z = bootstrap_variance(outcomes_of(sampled.kept_z),
                                                    config.cdr_resamples,
                                                    derive_seed(run_seed, step, 2));
            append_variant_rows(result.rows, config, ctx, sampled.tomogram, sampled.tomogram,
                                sampled.tomogram.p0_hat, sampled.tomogram.purity(), t, r,
                                propagated_variance(sampled.tomogram, var_x, var_z), var_x,
                                var_z, n_threads);
        }
        if (!any_kept) result.skipped_steps.push_back(step);
    }
    return result;
}

ExperimentResult oracle_rows(const ExperimentConfig &config) {
    ExperimentResult result;
    const IsingModel model{config.lattice, config.j_coupling, config.h_field};
    const unsigned site = config.resolved_site();
    for (unsigned step = 1; step <= config.steps; ++step) {
        const double t = step * config.tau;
        const StepContext ctx = make_step(config, step);
        ResultRow trotter{t, "trotter", ctx.reference, 0, ctx.reference, 1, 1, 0};
        result.rows.push_back(trotter);
        ResultRow continuum{t, "continuum", exact_magnetization(model, t, site), 0,
                            ctx.reference, 1, 1, 0};
        result.rows.push_back(continuum);
    }
    return result;
}

namespace {

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow> &rows) {
    if (rows.empty()) throw std::invalid_argument("no rows to serialize");
    std::string out = "t,variant,estimate,variance,error,p0,purity,realization\n";
    for (const ResultRow &row : rows) {
        out += format_double(row.t) + "," + row.variant + "," + format_double(row.estimate) +
               "," + format_double(row.variance) + "," + format_double(row.error()) + "," +
               format_double(row.p0) + "," + format_double(row.purity) + "," +
               std::to_string(row.realization) + "\n";
    }
    return out;
}

std::string rows_to_json(const std::vector<ResultRow> &rows) {
    if (rows.empty()) throw std::invalid_argument("no rows to serialize");
    json doc = json::array();
    for (const ResultRow &row : rows) {
        doc.push_back({{"t", row.t},
                       {"variant", row.variant},
                       {"estimate", row.estimate},
                       {"variance", row.variance},
                       {"error", row.error()},
                       {"exact", row.exact},
                       {"p0", row.p0},
                       {"purity", row.purity},
                       {"realization", row.realization}});
    }
    return doc.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json_text(const std::string &text) {
    const json doc = json::parse(text);
    std::vector<ResultRow> rows;
    for (const json &node : doc) {
        ResultRow row;
        row.t = node.at("t").get<double>();
        row.variant = node.at("variant").get<std::string>();
        row.estimate = node.at("estimate").get<double>();
        row.variance = node.at("variance").get<double>();
        row.exact = node.at("exact").get<double>();
        row.p0 = node.at("p0").get<double>();
        row.purity = node.at("purity").get<double>();
        row.realization = node.at("realization").get<unsigned>();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace evq
