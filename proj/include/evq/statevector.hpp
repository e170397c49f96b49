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
#include <span>
#include <vector>

#include "evq/circuit.hpp"
#include "evq/pauli.hpp"
#include "evq/rng.hpp"

namespace evq {

using cplx = std::complex<double>;

/**
 * Dense statevector on up to ~28 qubits, little-endian: qubit q is bit q of
 * the amplitude index. R is the amplitude component type (double in
 * practice). Reductions (norms, inner products, cumulative distributions)
 * accumulate in double.
 */
template <typename R = double>
class BasicStatevector {
  public:
    using amp_t = std::complex<R>;

    explicit BasicStatevector(unsigned n_qubits);

    unsigned n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<amp_t> &amplitudes() const { return amps_; }
    std::vector<amp_t> &amplitudes() { return amps_; }

    void apply(const GateOp &gate);
    void apply(const Circuit &circuit);
    void apply_pauli(const PauliString &p);

    double norm() const;
    cplx inner(const BasicStatevector &other) const;

    /// <psi| P |psi>, real part (imaginary residue is numerical noise).
    double expectation(const PauliString &p) const;
    cplx expectation_complex(const PauliString &p) const;

    /// Probability of measuring |0...0> on the given qubit subset mask.
    double zero_probability(uint64_t qubit_mask) const;

    /// Cumulative Born distribution over computational basis strings.
    std::vector<double> cumulative_distribution() const;

    /// One basis-string sample; use the cached cumulative table for bulk work.
    uint64_t sample(SplitMix64 &rng) const;
    static uint64_t sample(std::span<const double> cumulative, SplitMix64 &rng);

  private:
    unsigned n_;
    std::vector<amp_t> amps_;
};

using Statevector = BasicStatevector<double>;

extern template class BasicStatevector<double>;

/// Evaluates a circuit from |0...0>.
Statevector run_circuit(const Circuit &circuit);

}  // namespace evq
