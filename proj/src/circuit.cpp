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
#include "evq/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evq {

GateOp GateOp::inverse() const {
    GateOp g = *this;
    switch (kind) {
        case GateKind::S:
            g.kind = GateKind::Sdg;
            break;
        case GateKind::Sdg:
            g.kind = GateKind::S;
            break;
        case GateKind::RX:
        case GateKind::RZ:
        case GateKind::RZZ:
            g.angle = -angle;
            break;
        default:
            break;  // H, Paulis and controlled Paulis are involutions
    }
    return g;
}

Circuit &Circuit::push(GateOp g) {
    if (g.q0 >= n_qubits || (g.arity() == 2 && g.q1 >= n_qubits)) {
        throw std::out_of_range("gate target out of range");
    }
    if (g.arity() == 2 && g.q0 == g.q1) {
        throw std::invalid_argument("two-qubit gate with equal targets");
    }
    gates.push_back(g);
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_qubits > n_qubits) {
        throw std::invalid_argument("appended circuit exceeds the register");
    }
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}

Circuit &Circuit::controlled_pauli(unsigned control, const PauliString &p,
                                   const std::vector<unsigned> &target_map) {
    if (target_map.size() != p.n_qubits()) {
        throw std::invalid_argument("controlled_pauli target map size mismatch");
    }
    for (unsigned q = 0; q < p.n_qubits(); ++q) {
        switch (p.letter(q)) {
            case 'I':
                break;
            case 'X':
                cx(control, target_map[q]);
                break;
            case 'Y':
                cy(control, target_map[q]);
                break;
            case 'Z':
                cz(control, target_map[q]);
                break;
        }
    }
    const std::complex<double> c = p.coefficient();
    // c-(i^k P) = diag(1, i^k) on the control, i.e. S^k.
    if (c.imag() > 0.5) {
        s(control);
    } else if (c.real() < -0.5) {
        z(control);
    } else if (c.imag() < -0.5) {
        sdg(control);
    }
    return *this;
}

Circuit Circuit::inverted() const {
    Circuit inv(n_qubits);
    inv.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        inv.gates.push_back(it->inverse());
    }
    return inv;
}

bool is_clifford_angle(double theta, double tol) {
    const double k = theta / (std::numbers::pi / 2);
    return std::abs(k - std::round(k)) < tol;
}

std::vector<std::size_t> Circuit::non_clifford_indices(double tol) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (is_rotation(gates[i].kind) && !is_clifford_angle(gates[i].angle, tol)) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace evq
