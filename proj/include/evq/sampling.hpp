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

#include "evq/channel.hpp"
#include "evq/circuit.hpp"
#include "evq/statevector.hpp"

namespace evq {

/// One measured shot: all system qubits in the Z basis plus the ancilla in
/// its tomography basis. The ancilla bit is compacted out of system_bits.
struct ShotRecord {
    uint64_t system_bits;
    int ancilla_outcome;  // +1 or -1
    char ancilla_basis;   // 'X', 'Y' or 'Z'
};

/// A circuit with one Pauli channel attached after each gate. An empty
/// channel list means noiseless; otherwise sizes must match.
struct NoisyCircuit {
    Circuit circuit;
    std::vector<PauliChannel> channels;
};

/**
 * Attaches depolarizing noise after every gate: strength p1 on the qubit of
 * each single-qubit gate, p2 on the pair of each two-qubit gate.
 */
NoisyCircuit with_depolarizing_noise(const Circuit &circuit, double p1, double p2);

/// Basis-change gates rotating the ancilla so a Z measurement reads the
/// requested basis (X: H; Y: Sdg then H; Z: nothing).
void append_basis_rotation(Circuit &circuit, unsigned ancilla, char basis);

/**
 * Measures a prepared state: n_shots full-register samples in stream order,
 * the ancilla rotated into `basis` first. Deterministic per (seed, stream).
 */
std::vector<ShotRecord> measure_shots(const Statevector &state, unsigned ancilla, char basis,
                                      std::size_t n_shots, uint64_t seed, uint64_t stream);

/**
 * Stochastic Pauli-trajectory sampling. Trajectory t uses the generator
 * (seed, stream0 + t) and consumes, in order: one categorical draw per
 * non-identity channel location, then one uniform for the measured string.
 * Identical error patterns share one simulated distribution (bit-identical
 * to the naive path); pattern simulations run on n_threads (0 = hardware).
 */
std::vector<ShotRecord> sample_trajectories(const NoisyCircuit &noisy, unsigned ancilla,
                                            char basis, std::size_t n_shots, uint64_t seed,
                                            uint64_t stream0, unsigned n_threads = 0);

}  // namespace evq
