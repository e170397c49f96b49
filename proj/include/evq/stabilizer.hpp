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

#include <complex>
#include <vector>

#include "evq/circuit.hpp"
#include "evq/pauli.hpp"

namespace evq {

/// C p C^dag for a single Clifford gate, exact phase. Rotation gates are
/// accepted when the angle is a multiple of pi/2 (mapped to S/Z/H sequences,
/// whose conjugation action agrees up to droppable global phase).
PauliString clifford_conjugate(const PauliString &p, const GateOp &gate);

/// Conjugates through an ordered gate range: C_k ... C_1 p C_1^dag ... C_k^dag.
PauliString clifford_conjugate(const PauliString &p, const GateOp *first, const GateOp *last);

/**
 * Stabilizer tableau of a pure state C|0...0>. Rows 0..n-1 are destabilizers
 * (initially X_i), rows n..2n-1 stabilizers (initially Z_i); a gate updates
 * every row by conjugation.
 */
class StabilizerTableau {
  public:
    explicit StabilizerTableau(unsigned n_qubits);

    unsigned n_qubits() const { return n_; }
    const PauliString &destabilizer(unsigned i) const { return rows_[i]; }
    const PauliString &stabilizer(unsigned i) const { return rows_[n_ + i]; }

    void apply(const GateOp &gate);
    void apply(const Circuit &circuit);

    /**
     * <0|C^dag p C|0> including p's coefficient; exactly 0 when p
     * anticommutes with some stabilizer, otherwise a fourth root of unity
     * times |coefficient|.
     */
    std::complex<double> expectation_complex(const PauliString &p) const;

    /// Expectation of a Hermitian Pauli: always one of {-1, 0, +1}.
    int expectation(const PauliString &p) const;

    /// Bit i set iff p anticommutes with stabilizer row i (phase ignored).
    uint64_t syndrome(const PauliString &p) const;

  private:
    unsigned n_;
    std::vector<PauliString> rows_;
};

/// One term of a near-Clifford branch expansion: amplitude times a Pauli
/// displacement applied to the shared Clifford frame state.
struct NearCliffordBranch {
    std::complex<double> amplitude;
    PauliString displacement;
};

/**
 * Coherent expansion of a circuit with L non-Clifford rotations. Every
 * branch shares one tableau (the circuit with free rotations deleted); the
 * chosen rotation Paulis are pushed through the trailing Clifford gates and
 * kept as per-branch displacement strings.
 */
struct NearCliffordState {
    StabilizerTableau tableau;
    std::vector<NearCliffordBranch> branches;
    std::vector<double> source_angles;
};

/**
 * Expands the rotations listed in free_indices as
 * R_P(theta) = cos(theta/2) I - i sin(theta/2) P. All other rotation angles
 * must be Clifford. Branches with |amplitude| < 1e-14 are pruned and
 * branches with identical displacement bit patterns are merged.
 */
NearCliffordState expand_non_clifford(const Circuit &circuit,
                                      const std::vector<std::size_t> &free_indices,
                                      unsigned branch_budget = 15);

/// Sum over branch pairs of the displaced stabilizer matrix elements,
/// pruned by syndrome matching. Real within 1e-10, clamped to [-1, 1].
double near_clifford_expectation(const NearCliffordState &state, const PauliString &p);

/// Same pair sum without clamping; P = I returns the state normalization.
std::complex<double> near_clifford_expectation_raw(const NearCliffordState &state,
                                                   const PauliString &p);

}  // namespace evq
