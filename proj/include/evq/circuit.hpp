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

#include "evq/pauli.hpp"

namespace evq {

enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CX, CY, CZ, RX, RZ, RZZ };

inline bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RZ || k == GateKind::RZZ;
}

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CX || k == GateKind::CY || k == GateKind::CZ || k == GateKind::RZZ;
}

/**
 * One gate. Rotation convention: R_x(theta) = exp(-i theta X / 2),
 * R_z(theta) = exp(-i theta Z / 2), R_zz(theta) = exp(-i theta ZZ / 2).
 * For controlled gates q0 is the control and q1 the target.
 */
struct GateOp {
    GateKind kind;
    unsigned q0 = 0;
    unsigned q1 = 0;
    double angle = 0.0;

    unsigned arity() const { return is_two_qubit(kind) ? 2 : 1; }
    GateOp inverse() const;
};

/// Ordered gate list on a fixed register.
struct Circuit {
    unsigned n_qubits = 0;
    std::vector<GateOp> gates;

    explicit Circuit(unsigned n = 0) : n_qubits(n) {}

    Circuit &h(unsigned q) { return push({GateKind::H, q}); }
    Circuit &s(unsigned q) { return push({GateKind::S, q}); }
    Circuit &sdg(unsigned q) { return push({GateKind::Sdg, q}); }
    Circuit &x(unsigned q) { return push({GateKind::X, q}); }
    Circuit &y(unsigned q) { return push({GateKind::Y, q}); }
    Circuit &z(unsigned q) { return push({GateKind::Z, q}); }
    Circuit &cx(unsigned c, unsigned t) { return push({GateKind::CX, c, t}); }
    Circuit &cy(unsigned c, unsigned t) { return push({GateKind::CY, c, t}); }
    Circuit &cz(unsigned c, unsigned t) { return push({GateKind::CZ, c, t}); }
    Circuit &rx(unsigned q, double theta) { return push({GateKind::RX, q, 0, theta}); }
    Circuit &rz(unsigned q, double theta) { return push({GateKind::RZ, q, 0, theta}); }
    Circuit &rzz(unsigned a, unsigned b, double theta) { return push({GateKind::RZZ, a, b, theta}); }

    /**
     * Controlled application of a Pauli operator, compiled into controlled
     * single-qubit Paulis on the support plus an S-power on the control for
     * the coefficient.
     */
    Circuit &controlled_pauli(unsigned control, const PauliString &p,
                              const std::vector<unsigned> &target_map);

    Circuit &push(GateOp g);
    Circuit &append(const Circuit &other);

    /// Reversed circuit with every gate inverted.
    Circuit inverted() const;

    /// Indices of rotation gates whose angle is not a multiple of pi/2.
    std::vector<std::size_t> non_clifford_indices(double tol = 1e-12) const;
};

/// True iff theta is an integer multiple of pi/2 within tol.
bool is_clifford_angle(double theta, double tol = 1e-12);

}  // namespace evq
