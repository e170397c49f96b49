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

// Independent dense-matrix oracles used only by tests. Everything here is
// built from explicit 2x2 / 4x4 matrices and Kronecker products so that the
// bit-twiddling kernels in the library are checked against a second route.

#include <Eigen/Dense>
#include <complex>

#include "evq/circuit.hpp"
#include "evq/pauli.hpp"
#include "evq/statevector.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using namespace std::complex_literals;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Mat letter_matrix(char c) {
    Mat m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -1i, 1i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("bad letter");
    }
    return m;
}

// Little-endian register: qubit 0 is the least-significant index bit, so it
// sits on the right of the Kronecker chain.
inline Mat pauli_matrix(const evq::PauliString &p) {
    Mat m = Mat::Identity(1, 1);
    for (unsigned q = 0; q < p.n_qubits(); ++q) {
        m = kron(letter_matrix(p.letter(q)), m);
    }
    return p.coefficient() * m;
}

inline Mat gate_matrix_local(const evq::GateOp &g) {
    using evq::GateKind;
    Mat m;
    const std::complex<double> i1(0, 1);
    switch (g.kind) {
        case GateKind::H:
            m.resize(2, 2);
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            return m;
        case GateKind::S:
            m.resize(2, 2);
            m << 1, 0, 0, i1;
            return m;
        case GateKind::Sdg:
            m.resize(2, 2);
            m << 1, 0, 0, -i1;
            return m;
        case GateKind::X: return letter_matrix('X');
        case GateKind::Y: return letter_matrix('Y');
        case GateKind::Z: return letter_matrix('Z');
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m.resize(2, 2);
            m << c, -i1 * s, -i1 * s, c;
            return m;
        }
        case GateKind::RZ: {
            m.resize(2, 2);
            m << std::exp(-i1 * g.angle / 2.0), 0, 0, std::exp(i1 * g.angle / 2.0);
            return m;
        }
        case GateKind::CX:
        case GateKind::CY:
        case GateKind::CZ: {
            // Basis order |q1 q0> with q0 least significant; control is q0
            // here, caller embeds. Not used directly; see gate_matrix below.
            throw std::logic_error("two-qubit handled in gate_matrix");
        }
        case GateKind::RZZ: throw std::logic_error("two-qubit handled in gate_matrix");
    }
    throw std::logic_error("unreachable");
}

// Full 2^n x 2^n unitary of one gate, little-endian embedding.
inline Mat gate_matrix(unsigned n, const evq::GateOp &g) {
    using evq::GateKind;
    const Eigen::Index dim = Eigen::Index(1) << n;
    const std::complex<double> i1(0, 1);
    if (g.arity() == 1) {
        Mat m = Mat::Identity(1, 1);
        for (unsigned q = 0; q < n; ++q) {
            m = kron(q == g.q0 ? gate_matrix_local(g) : letter_matrix('I'), m);
        }
        return m;
    }
    Mat u = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const bool c0 = (b >> g.q0) & 1, c1 = (b >> g.q1) & 1;
        if (g.kind == GateKind::RZZ) {
            const double sign = (c0 == c1) ? 1.0 : -1.0;
            u(b, b) = std::exp(-i1 * (g.angle / 2.0) * sign);
        } else if (!c0) {
            u(b, b) = 1;
        } else if (g.kind == GateKind::CZ) {
            u(b, b) = c1 ? -1.0 : 1.0;
        } else if (g.kind == GateKind::CX) {
            u(b ^ (Eigen::Index(1) << g.q1), b) = 1;
        } else {  // CY
            u(b ^ (Eigen::Index(1) << g.q1), b) = c1 ? -i1 : i1;
        }
    }
    return u;
}

inline Mat circuit_matrix(const evq::Circuit &c) {
    Mat u = Mat::Identity(Eigen::Index(1) << c.n_qubits, Eigen::Index(1) << c.n_qubits);
    for (const auto &g : c.gates) {
        u = gate_matrix(c.n_qubits, g) * u;
    }
    return u;
}

inline Vec to_vec(const evq::Statevector &psi) {
    Vec v(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        v(Eigen::Index(i)) = psi.amplitudes()[i];
    }
    return v;
}

}  // namespace oracle
