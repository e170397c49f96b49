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

#include <string>
#include <vector>

#include "evq/density.hpp"
#include "evq/sampling.hpp"

namespace evq {

/**
 * Echo-verification circuit: H on the ancilla, U on the system,
 * ancilla-controlled V, U inverse, H on the ancilla. The ancilla is always
 * the last qubit (index n_system).
 */
struct EvCircuit {
    Circuit circuit;        // on n_system + 1 qubits
    Circuit u;              // system-only preparation, n_system qubits
    PauliString observable; // V, on n_system qubits
    unsigned n_system = 0;
    /// Original system-qubit label per current index; identity before any
    /// light-cone reduction.
    std::vector<unsigned> original_sites;

    unsigned ancilla_index() const { return n_system; }
};

/// Builds the EV circuit of a preparation U and Pauli observable V.
EvCircuit build_ev_circuit(const Circuit &u, const PauliString &v);

/**
 * Removes U gates outside the back-propagated support of V (each cancels
 * against its inverse in U-dagger) and compacts the register. Every
 * noiseless expectation of the reduced circuit equals the original's.
 */
EvCircuit lightcone_reduce(const EvCircuit &ev);

/// System qubits that remain in the light cone (original labels, ascending).
std::vector<unsigned> lightcone_sites(const Circuit &u, const PauliString &v);

/// Indices into u.gates of rotation gates inside the light cone of v.
std::vector<std::size_t> lightcone_rotation_indices(const Circuit &u, const PauliString &v);

/// Acceptance rule for system measurement strings.
struct PostselectionRule {
    std::vector<unsigned> neighborhood;  // system indices forced to 0
    unsigned max_hamming = 0;            // allowed 1s outside the neighborhood

    /// Exact rule: every one of the n system bits must be 0.
    static PostselectionRule exact(unsigned n_system);
};

/// Applies the rule; returns kept records and the survival fraction.
std::pair<std::vector<ShotRecord>, double> postselect(const std::vector<ShotRecord> &records,
                                                      const PostselectionRule &rule);

/// Postselected tomography estimates of the ancilla state.
struct AncillaTomogram {
    double e_x = 0, e_y = 0, e_z = 0;
    double p0_hat = 0;
    std::size_t n_total = 0;
    std::size_t n_kept = 0;
    bool has_y = false;

    double bloch_norm() const;
    /// Tr(rho^2) = (1 + |r|^2) / 2 of the reconstructed single-qubit state.
    double purity() const;
};

/// Aggregates postselected per-basis records; throws if a requested basis
/// kept no shots. Y is optional.
AncillaTomogram tomograph(const std::vector<ShotRecord> &kept_x,
                          const std::vector<ShotRecord> &kept_z,
                          const std::vector<ShotRecord> &kept_y, double p0_hat,
                          std::size_t n_total);

enum class EstimatorVariant {
    standard,
    z_bias,      // printed form, denominator 1 + sqrt(1 - e_z)
    z_bias_sq,   // self-consistent radicand 1 - e_z^2
    x_bias,
    purity_normalized,
    spectral_purified,
    depolarization_tolerant,
    evcdr,
};

std::string variant_name(EstimatorVariant v);
EstimatorVariant variant_from_name(const std::string &name);

struct EstimatorResult {
    double value = 0;
    double variance = 0;
    EstimatorVariant variant = EstimatorVariant::standard;
    bool clamped = false;     // a tomogram entry was clamped into [-1, 1]
    bool degenerate = false;  // spectral tie (maximally mixed ancilla)
};

/// Context for variants that need more than the tomogram.
struct EstimatorContext {
    double delta = 0;      // depolarization rate (tolerant variant)
    double dim = 0;        // system Hilbert-space dimension d
    double variance = 0;   // forwarded into the result
};

EstimatorResult estimate(const AncillaTomogram &t, EstimatorVariant variant,
                         const EstimatorContext &ctx = {});

/// Depolarization-rate readout from purity and postselection probability.
double estimate_depolarization_rate(const AncillaTomogram &t, double dim);

/// Exact (density-matrix) EV evaluation under per-gate Pauli noise.
struct ExactEvResult {
    /// Physical postselected ancilla state, normalized by the noisy p0.
    AncillaTomogram true_tomogram;
    /// Same numerators divided by the noiseless p0 = (1 + V^2) / 2; this is
    /// the convention of the channel linearity formulas and of exact-mode
    /// regression.
    AncillaTomogram linear_tomogram;
    DensityMatrix ancilla_state{1};  // normalized physical state
    double p0 = 0;                   // noisy postselection mass
    double purity = 0;               // Tr(rho^2) of the physical state
    double v_noiseless = 0;          // <0|U^dag V U|0>
};

/// Requires n_system + 1 within the density-matrix limit. The channel list
/// follows NoisyCircuit semantics over ev.circuit.
ExactEvResult exact_ev(const EvCircuit &ev, const std::vector<PauliChannel> &channels);

/// Sampled EV evaluation: per-basis trajectory shots, postselection,
/// tomography. Streams consumed: [stream0, stream0 + n_bases * shots_per_basis).
struct SampledEvResult {
    AncillaTomogram tomogram;
    std::vector<ShotRecord> kept_x, kept_y, kept_z;
};

SampledEvResult sample_ev(const NoisyCircuit &noisy_ev, unsigned ancilla,
                          const PostselectionRule &rule, std::size_t shots_per_basis,
                          uint64_t seed, uint64_t stream0, bool measure_y = true,
                          unsigned n_threads = 0);

}  // namespace evq
