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
#include "evq/cdr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "evq/sampling.hpp"
#include "evq/stabilizer.hpp"

namespace evq {

double round_to_clifford(double theta) {
    return std::round(theta * 2 / std::numbers::pi) * std::numbers::pi / 2;
}

std::vector<TrainingCircuitSpec> sample_training_set(const EvCircuit &base, unsigned l,
                                                     unsigned m_count, uint64_t seed) {
    std::vector<std::size_t> pool = lightcone_rotation_indices(base.u, base.observable);
    if (l > pool.size())
        throw std::invalid_argument("training size exceeds the light-cone rotation count");
    double max_distinct = 1;  // C(pool, l), saturating
    for (unsigned j = 0; j < l && max_distinct < 1e12; ++j)
        max_distinct *= double(pool.size() - j) / double(j + 1);
    SplitMix64 rng(seed, 0);
    std::vector<TrainingCircuitSpec> specs;
    std::set<std::vector<std::size_t>> seen;
    for (unsigned m = 0; m < m_count; ++m) {
        std::vector<std::size_t> subset;
        // Distinct subsets; duplicates allowed only once the pool is exhausted.
        for (int attempt = 0; attempt < 10000; ++attempt) {
            std::vector<std::size_t> draw = pool;
            for (unsigned j = 0; j < l; ++j)
                std::swap(draw[j], draw[j + rng.below(draw.size() - j)]);
            subset.assign(draw.begin(), draw.begin() + l);
            std::sort(subset.begin(), subset.end());
            if (l == 0 || seen.insert(subset).second || double(seen.size()) >= max_distinct)
                break;
        }
        specs.push_back({subset});
    }
    return specs;
}

EvCircuit training_circuit(const EvCircuit &base, const TrainingCircuitSpec &spec) {
    Circuit u = base.u;
    for (std::size_t i = 0; i < u.gates.size(); ++i) {
        if (!is_rotation(u.gates[i].kind)) continue;
        if (std::find(spec.free_indices.begin(), spec.free_indices.end(), i) !=
            spec.free_indices.end())
            continue;
        u.gates[i].angle = round_to_clifford(u.gates[i].angle);
    }
    EvCircuit out = build_ev_circuit(u, base.observable);
    out.original_sites = base.original_sites;
    return out;
}

double training_ideal_value(const EvCircuit &base, const TrainingCircuitSpec &spec,
                            unsigned branch_budget) {
    const EvCircuit t = training_circuit(base, spec);
    const NearCliffordState state = expand_non_clifford(t.u, spec.free_indices, branch_budget);
    return near_clifford_expectation(state, t.observable);
}

TrainingDatum evaluate_training_exact(const EvCircuit &base, const TrainingCircuitSpec &spec,
                                      const std::vector<PauliChannel> &channels,
                                      unsigned branch_budget) {
    const EvCircuit t = training_circuit(base, spec);
    const ExactEvResult res = exact_ev(t, channels);
    TrainingDatum datum;
    datum.ideal_value = training_ideal_value(base, spec, branch_budget);
    datum.noisy_x = res.linear_tomogram.e_x;
    datum.noisy_z = res.linear_tomogram.e_z;
    datum.p0_hat = res.p0;
    return datum;
}

TrainingDatum evaluate_training_depolarizing(const EvCircuit &base,
                                             const TrainingCircuitSpec &spec, double p1,
                                             double p2, unsigned branch_budget) {
    const EvCircuit t = training_circuit(base, spec);
    const NoisyCircuit noisy = with_depolarizing_noise(t.circuit, p1, p2);
    return evaluate_training_exact(base, spec, noisy.channels, branch_budget);
}

double bootstrap_variance(const std::vector<int> &outcomes, std::size_t n_resamples,
                          uint64_t seed) {
    if (outcomes.empty()) throw std::invalid_argument("bootstrap needs outcomes");
    if (n_resamples < 2) throw std::invalid_argument("bootstrap needs at least 2 resamples");
    SplitMix64 rng(seed, 0);
    std::vector<double> means;
    means.reserve(n_resamples);
    for (std::size_t r = 0; r < n_resamples; ++r) {
        long sum = 0;
        for (std::size_t i = 0; i < outcomes.size(); ++i)
            sum += outcomes[rng.below(outcomes.size())];
        means.push_back(double(sum) / double(outcomes.size()));
    }
    double grand = 0;
    for (const double m : means) grand += m;
    grand /= double(n_resamples);
    double var = 0;
    for (const double m : means) var += (m - grand) * (m - grand);
    return var / double(n_resamples - 1);
}

TrainingDatum evaluate_training_sampled(const EvCircuit &base, const TrainingCircuitSpec &spec,
                                        double p1, double p2, const PostselectionRule &rule,
                                        std::size_t shots_per_basis, uint64_t seed,
                                        uint64_t stream0, std::size_t n_resamples,
                                        unsigned branch_budget, unsigned n_threads) {
    const EvCircuit t = training_circuit(base, spec);
    const NoisyCircuit noisy = with_depolarizing_noise(t.circuit, p1, p2);
    const SampledEvResult res = sample_ev(noisy, t.n_system, rule, shots_per_basis, seed,
                                          stream0, /*measure_y=*/false, n_threads);
    TrainingDatum datum;
    datum.ideal_value = training_ideal_value(base, spec, branch_budget);
    datum.noisy_x = res.tomogram.e_x;
    datum.noisy_z = res.tomogram.e_z;
    datum.p0_hat = res.tomogram.p0_hat;
    auto outcomes = [](const std::vector<ShotRecord> &records) {
        std::vector<int> out;
        out.reserve(records.size());
        for (const ShotRecord &r : records) out.push_back(r.ancilla_outcome);
        return out;
    };
    const uint64_t next_stream = stream0 + 2 * shots_per_basis;
    datum.var_x = bootstrap_variance(outcomes(res.kept_x), n_resamples, seed ^ next_stream);
    datum.var_z = bootstrap_variance(outcomes(res.kept_z), n_resamples, seed ^ (next_stream + 1));
    return datum;
}

double RegressionFit::inverse(double y) const {
    if (slope == 0) throw std::domain_error("regression slope is zero");
    return (y - intercept) / slope;
}

RegressionFit fit(const std::vector<TrainingDatum> &data, FitAxis axis, FitWeighting weighting,
                  bool constrain_intercept) {
    if (data.size() < 2) throw std::invalid_argument("fit needs at least 2 training data");
    std::vector<double> xs, ys, ws;
    bool all_weighted = weighting == FitWeighting::wls;
    for (const TrainingDatum &d : data) {
        const double c = d.ideal_value;
        const double denom = 1 + c * c;
        xs.push_back(axis == FitAxis::x ? (1 - c * c) / denom : 2 * c / denom);
        ys.push_back(axis == FitAxis::x ? d.noisy_x : d.noisy_z);
        const double var = axis == FitAxis::x ? d.var_x : d.var_z;
        if (var <= 0) all_weighted = false;
        ws.push_back(var);
    }
    for (std::size_t i = 0; i < ws.size(); ++i) ws[i] = all_weighted ? 1 / ws[i] : 1.0;

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
        sxx += ws[i] * xs[i] * xs[i];
        sxy += ws[i] * xs[i] * ys[i];
    }
    RegressionFit out;
    out.weighting = weighting;
    if (constrain_intercept) {
        if (sxx <= 0) throw std::domain_error("degenerate abscissae");
        out.slope = sxy / sxx;
        out.intercept = 0;
    } else {
        const double det = sw * sxx - sx * sx;
        const double scale = std::max(1.0, sw * sxx);
        if (std::abs(det) < 1e-12 * scale) throw std::domain_error("degenerate abscissae");
        out.slope = (sw * sxy - sx * sy) / det;
        out.intercept = (sy - out.slope * sx) / sw;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - out.intercept - out.slope * xs[i];
        out.residual_sum += ws[i] * r * r;
    }
    return out;
}

EstimatorResult evcdr_estimate(const AncillaTomogram &t, const RegressionFit &fit_x,
                               const RegressionFit &fit_z, double var_x, double var_z) {
    const double ix = fit_x.inverse(t.e_x);
    const double iz = fit_z.inverse(t.e_z);
    if (1 + ix == 0) throw std::domain_error("inverted e_x equals -1");
    EstimatorResult res;
    res.variant = EstimatorVariant::evcdr;
    res.value = iz / (1 + ix);
    const double dz = 1 / (fit_z.slope * (1 + ix));
    const double dx = -res.value / ((1 + ix) * fit_x.slope);
    res.variance = dz * dz * var_z + dx * dx * var_x;
    return res;
}

}  // namespace evq
