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

#include <Eigen/Dense>
#include <functional>

#include "evq/channel.hpp"
#include "evq/circuit.hpp"
#include "evq/statevector.hpp"

namespace evq {

/**
 * Exact density matrix for registers of at most 10 qubits. Used as the
 * oracle backend: channel evolution, projector postselection and partial
 * traces are computed without sampling.
 */
class DensityMatrix {
  public:
    explicit DensityMatrix(unsigned n_qubits);

    /// |psi><psi|.
    static DensityMatrix from_statevector(const Statevector &psi);

    unsigned n_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    const Eigen::MatrixXcd &matrix() const { return m_; }
    Eigen::MatrixXcd &matrix() { return m_; }

    void apply_gate(const GateOp &gate);
    void apply_circuit(const Circuit &circuit);

    /// rho -> sum_i lambda_i P_i rho P_i^dag.
    void apply_channel(const PauliChannel &channel);

    double trace_real() const;
    double purity() const;
    double expectation(const PauliString &p) const;

    /**
     * Projects onto the span of basis strings accepted by `accept` (applied
     * to the amplitude index). Returns the retained probability mass; the
     * state is left unnormalized.
     */
    double project(const std::function<bool(uint64_t)> &accept);

    /// Keeps the listed qubits (ascending order preserved), tracing out the rest.
    DensityMatrix partial_trace_keep(const std::vector<unsigned> &keep) const;

    void normalize();

    /// Max deviation from Hermiticity.
    double hermiticity_error() const;

    /// Smallest eigenvalue (Hermitian part).
    double min_eigenvalue() const;

  private:
    unsigned n_;
    Eigen::MatrixXcd m_;
};

}  // namespace evq
