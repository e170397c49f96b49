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
#include <vector>

#include "evq/ev.hpp"

namespace evq {

/// Nearest multiple of pi/2; exact midpoints round half away from zero.
double round_to_clifford(double theta);

/// One near-Clifford training circuit: which rotations keep their angles.
struct TrainingCircuitSpec {
    std::vector<std::size_t> free_indices;  // rotation gate indices in ev.u
};

/**
 * M distinct uniformly drawn subsets (size l) of the light-cone rotation
 * indices of base.u; deterministic under seed. l = 0 yields identical
 * fully Clifford specs. Throws when l exceeds the light-cone count.
 */
std::vector<TrainingCircuitSpec> sample_training_set(const EvCircuit &base, unsigned l,
                                                     unsigned m_count, uint64_t seed);

/// base with every rotation outside spec.free_indices rounded to Clifford.
EvCircuit training_circuit(const EvCircuit &base, const TrainingCircuitSpec &spec);

/// <0| U^dag V U |0> of a training circuit via the near-Clifford expansion.
double training_ideal_value(const EvCircuit &base, const TrainingCircuitSpec &spec,
                            unsigned branch_budget = 15);

struct TrainingDatum {
    double ideal_value = 0;  // C(theta; i)
    double noisy_x = 0, noisy_z = 0;
    double var_x = 0, var_z = 0;
    double p0_hat = 0;
};

/**
 * Exact-mode pair: ideal via the stabilizer expansion, noisy via the
 * density-matrix EV pipeline in the noiseless-p0 (linear) convention, so
 * Pauli-channel responses are exactly affine. Channels follow NoisyCircuit
 * semantics over the training EV circuit.
 */
TrainingDatum evaluate_training_exact(const EvCircuit &base, const TrainingCircuitSpec &spec,
                                      const std::vector<PauliChannel> &channels,
                                      unsigned branch_budget = 15);

/// Exact-mode pair under per-gate depolarizing noise (p1 single, p2 two-qubit).
TrainingDatum evaluate_training_depolarizing(const EvCircuit &base,
                                             const TrainingCircuitSpec &spec, double p1,
                                             double p2, unsigned branch_budget = 15);

/**
 * Sampled-mode pair: trajectory shots on the noisy training EV circuit,
 * postselection with the caller's rule, bootstrap variances per basis.
 * Streams consumed as in sample_ev plus one for the bootstrap.
 */
TrainingDatum evaluate_training_sampled(const EvCircuit &base, const TrainingCircuitSpec &spec,
                                        double p1, double p2, const PostselectionRule &rule,
                                        std::size_t shots_per_basis, uint64_t seed,
                                        uint64_t stream0, std::size_t n_resamples = 200,
                                        unsigned branch_budget = 15, unsigned n_threads = 0);

/// Variance of the mean of +-1 outcomes across bootstrap resamples.
double bootstrap_variance(const std::vector<int> &outcomes, std::size_t n_resamples,
                          uint64_t seed);

enum class FitWeighting { ols, wls };
enum class FitAxis { x, z };

struct RegressionFit {
    double slope = 1;
    double intercept = 0;
    FitWeighting weighting = FitWeighting::ols;
    double residual_sum = 0;  // sum_i W_i r_i^2

    double inverse(double y) const;  // (y - intercept) / slope
};

/**
 * Weighted least squares of the noisy ordinate against the noiseless
 * forward map: abscissa (1 - C^2)/(1 + C^2) for axis x, 2C/(1 + C^2) for
 * axis z. WLS weights are 1/var (falling back to OLS weights when a
 * variance is 0). constrain_intercept forces alpha = 0.
 */
RegressionFit fit(const std::vector<TrainingDatum> &data, FitAxis axis, FitWeighting weighting,
                  bool constrain_intercept = false);

/**
 * E_EVCDR = f_Z^{-1}(e_z) (1 + f_X^{-1}(e_x))^{-1}; variance propagated to
 * first order from var_x / var_z. Throws on zero slope or an inverted
 * e_x of -1.
 */
EstimatorResult evcdr_estimate(const AncillaTomogram &t, const RegressionFit &fit_x,
                               const RegressionFit &fit_z, double var_x = 0, double var_z = 0);

}  // namespace evq
