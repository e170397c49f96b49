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

#include <vector>

#include "evq/pauli.hpp"
#include "evq/rng.hpp"

namespace evq {

/// One Kraus branch of a Pauli channel.
struct PauliError {
    PauliString pauli;
    double probability;
};

/**
 * Probabilistic Pauli channel Phi(rho) = sum_i lambda_i P_i rho P_i.
 * Errors are listed sparsely; probabilities must sum to 1.
 */
class PauliChannel {
  public:
    PauliChannel() = default;
    PauliChannel(unsigned n_qubits, std::vector<PauliError> errors);

    /// Identity channel (single no-error branch).
    static PauliChannel identity(unsigned n_qubits);

    /**
     * Depolarizing channel of strength delta: every one of the d^2 Paulis
     * carries rate delta/d^2, the identity keeps 1 - delta + delta/d^2.
     * Equivalent to rho -> (1-delta) rho + (delta/d) I.
     */
    static PauliChannel depolarizing(unsigned n_qubits, double delta);

    /// Uniform two-qubit depolarizing on (a, b) embedded in an n-qubit register.
    static PauliChannel two_qubit_depolarizing(unsigned n_qubits, unsigned a, unsigned b,
                                               double delta);

    /// Single-qubit depolarizing on qubit q embedded in an n-qubit register.
    static PauliChannel single_qubit_depolarizing(unsigned n_qubits, unsigned q, double delta);

    unsigned n_qubits() const { return n_; }
    const std::vector<PauliError> &errors() const { return errors_; }
    bool is_identity() const;

    /// Draws one error index according to the rates.
    std::size_t sample(SplitMix64 &rng) const;

  private:
    unsigned n_ = 0;
    std::vector<PauliError> errors_;
    std::vector<double> cumulative_;
};

/// All 4^n Pauli bit patterns on n qubits (phase +1), identity first.
std::vector<PauliString> enumerate_paulis(unsigned n_qubits);

}  // namespace evq
