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
#include "evq/density.hpp"

#include <bit>
#include <stdexcept>

namespace evq {

namespace {
constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// P * M where P = i^s X^x Z^z: row b of the result is i^s (-1)^{(b^x)&z} row (b^x) of M.
void pauli_left(Eigen::MatrixXcd &m, const PauliString &p) {
    const uint64_t x = p.x_bits(), z = p.z_bits();
    const cplx phase = kIPow[p.phase_power()];
    const Eigen::Index dim = m.rows();
    if (x != 0) {
        // Row permutation done via explicit copy: dim <= 4096, cost is negligible.
        Eigen::MatrixXcd out(dim, m.cols());
        for (uint64_t b = 0; b < uint64_t(dim); ++b) {
            const int sign = std::popcount(b & z) & 1 ? -1 : 1;
            out.row(b ^ x) = (phase * double(sign)) * m.row(b);
        }
        m = std::move(out);
    } else {
        for (uint64_t b = 0; b < uint64_t(dim); ++b) {
            const int sign = std::popcount(b & z) & 1 ? -1 : 1;
            m.row(b) *= phase * double(sign);
        }
    }
}
}  // namespace

DensityMatrix::DensityMatrix(unsigned n_qubits) : n_(n_qubits) {
    if (n_qubits > 12) {
        throw std::invalid_argument("density matrix register too large");
    }
    const Eigen::Index d = Eigen::Index(1) << n_;
    m_ = Eigen::MatrixXcd::Zero(d, d);
    m_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector &psi) {
    DensityMatrix rho(psi.n_qubits());
    const Eigen::Index d = rho.dim();
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i) = psi.amplitudes()[i];
    }
    rho.m_ = v * v.adjoint();
    return rho;
}

void DensityMatrix::apply_gate(const GateOp &gate) {
    // U rho U^dag: run the statevector kernel over columns, then over rows
    // via the adjoint trick.
    const Eigen::Index d = dim();
    Statevector scratch(n_);
    auto apply_columns = [&](Eigen::MatrixXcd &m) {
        for (Eigen::Index c = 0; c < d; ++c) {
            for (Eigen::Index r = 0; r < d; ++r) {
                scratch.amplitudes()[r] = m(r, c);
            }
            scratch.apply(gate);
            for (Eigen::Index r = 0; r < d; ++r) {
                m(r, c) = scratch.amplitudes()[r];
            }
        }
    };
    apply_columns(m_);
    m_.adjointInPlace();
    apply_columns(m_);
    m_.adjointInPlace();
}

void DensityMatrix::apply_circuit(const Circuit &circuit) {
    if (circuit.n_qubits != n_) {
        throw std::invalid_argument("circuit register size mismatch");
    }
    for (const GateOp &g : circuit.gates) {
        apply_gate(g);
    }
}

void DensityMatrix::apply_channel(const PauliChannel &channel) {
    if (channel.n_qubits() != n_) {
        throw std::invalid_argument("channel dimension mismatch");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const PauliError &e : channel.errors()) {
        if (e.probability == 0) {
            continue;
        }
        if (e.pauli.is_identity_bits()) {
            out += e.probability * m_;
            continue;
        }
        Eigen::MatrixXcd term = m_;
        pauli_left(term, e.pauli);
        term.adjointInPlace();
        pauli_left(term, e.pauli);
        term.adjointInPlace();
        out += e.probability * term;
    }
    m_ = std::move(out);
}

double DensityMatrix::trace_real() const { return m_.trace().real(); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::expectation(const PauliString &p) const {
    if (p.n_qubits() != n_) {
        throw std::invalid_argument("Pauli dimension mismatch");
    }
    Eigen::MatrixXcd term = m_;
    pauli_left(term, p);
    return term.trace().real();
}

double DensityMatrix::project(const std::function<bool(uint64_t)> &accept) {
    const Eigen::Index d = dim();
    for (Eigen::Index r = 0; r < d; ++r) {
        const bool keep_r = accept(uint64_t(r));
        for (Eigen::Index c = 0; c < d; ++c) {
            if (!keep_r || !accept(uint64_t(c))) {
                m_(r, c) = 0;
            }
        }
    }
    return trace_real();
}

DensityMatrix DensityMatrix::partial_trace_keep(const std::vector<unsigned> &keep) const {
    const unsigned k = keep.size();
    DensityMatrix out(k);
    out.m_.setZero();
    const Eigen::Index d = dim();
    auto compress = [&](uint64_t full) {
        uint64_t reduced = 0;
        for (unsigned j = 0; j < k; ++j) {
            reduced |= ((full >> keep[j]) & 1ULL) << j;
        }
        return reduced;
    };
    uint64_t keep_mask = 0;
    for (unsigned q : keep) {
        keep_mask |= 1ULL << q;
    }
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            if ((uint64_t(r) & ~keep_mask) != (uint64_t(c) & ~keep_mask)) {
                continue;  // off-diagonal in the traced-out register
            }
            out.m_(compress(r), compress(c)) += m_(r, c);
        }
    }
    return out;
}

void DensityMatrix::normalize() {
    const double t = trace_real();
    if (t <= 0) {
        throw std::runtime_error("cannot normalize state with non-positive trace");
    }
    m_ /= t;
}

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace evq
