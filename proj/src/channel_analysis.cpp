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
#include "evq/channel_analysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "evq/statevector.hpp"

namespace evq {

namespace {

// +1 when the ancilla letter commutes with Z (resp. X), -1 otherwise.
int sign_z(char letter) { return (letter == 'I' || letter == 'Z') ? 1 : -1; }
int sign_x(char letter) { return (letter == 'I' || letter == 'X') ? 1 : -1; }

Eigen::Matrix2cd letter_matrix(char letter) {
    const std::complex<double> i(0, 1);
    Eigen::Matrix2cd m;
    switch (letter) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

ChannelFactors channel_factors(const PauliChannel &channel, unsigned ancilla_index) {
    ChannelFactors factors{0, 0, 0};
    for (const PauliError &error : channel.errors()) {
        const SystemAncillaSplit parts = split(error.pauli, ancilla_index);
        if (parts.system_part.is_z_type()) {
            factors.lambda_z += error.probability * sign_z(parts.ancilla_letter);
            factors.lambda_x += error.probability * sign_x(parts.ancilla_letter);
        } else {
            factors.omega_x += error.probability * sign_x(parts.ancilla_letter);
        }
    }
    return factors;
}

std::array<double, 3> predict_expectations(const ChannelFactors &factors, double v_exact) {
    const double denom = 1 + v_exact * v_exact;
    const double tr_x = (1 - v_exact * v_exact) / denom * factors.lambda_x - factors.omega_x;
    const double tr_z = 2 * v_exact / denom * factors.lambda_z;
    return {tr_x, 0.0, tr_z};
}

namespace {

struct ErrorAmplitudes {
    std::complex<double> a;      // <0| P^sys |0>
    std::complex<double> gamma;  // <0| W P^sys |0>, W = U^dag V U
    bool z_type = false;
};

// Amplitudes of the conditional (system = all zeros) ancilla branch for one
// error. V Hermitian makes W Hermitian, so <0| P W |0> = conj(gamma).
std::vector<ErrorAmplitudes> error_amplitudes(const PauliChannel &channel, const Circuit &u,
                                              const PauliString &v) {
    const unsigned n = u.n_qubits;
    Statevector w0(n);  // W |0>
    w0.apply(u);
    w0.apply_pauli(v);
    w0.apply(u.inverted());

    std::vector<ErrorAmplitudes> out;
    out.reserve(channel.errors().size());
    for (const PauliError &error : channel.errors()) {
        const SystemAncillaSplit parts = split(error.pauli, n);
        ErrorAmplitudes amp;
        amp.z_type = parts.system_part.is_z_type();
        Statevector p0_state(n);
        p0_state.apply_pauli(parts.system_part);
        amp.a = p0_state.amplitudes()[0];
        Statevector pw = w0;
        pw.apply_pauli(parts.system_part);
        amp.gamma = std::conj(pw.amplitudes()[0]);
        out.push_back(amp);
    }
    return out;
}

}  // namespace

ConditionalPostselection conditional_p0(const PauliChannel &channel, const Circuit &u,
                                        const PauliString &v) {
    ConditionalPostselection result;
    const std::vector<ErrorAmplitudes> amps = error_amplitudes(channel, u, v);
    const std::vector<PauliError> &errors = channel.errors();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p0 = (std::norm(amps[i].a) + std::norm(amps[i].gamma)) / 2;
        result.p0_given.push_back(p0);
        result.gamma.push_back(amps[i].gamma);
        result.z_type.push_back(amps[i].z_type);
        result.p0_overall += errors[i].probability * p0;
    }
    return result;
}

DensityMatrix predicted_ancilla_state(const PauliChannel &channel, const Circuit &u,
                                      const PauliString &v) {
    const std::vector<ErrorAmplitudes> amps = error_amplitudes(channel, u, v);
    const std::vector<PauliError> &errors = channel.errors();
    Eigen::Matrix2cd accum = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        // Unnormalized branch (a |+> + conj(gamma) |->) / sqrt(2) in the
        // computational basis, then conjugated by the ancilla letter.
        const std::complex<double> b = std::conj(amps[i].gamma);
        Eigen::Vector2cd psi;
        psi << (amps[i].a + b) / 2.0, (amps[i].a - b) / 2.0;
        const SystemAncillaSplit parts = split(errors[i].pauli, u.n_qubits);
        const Eigen::Matrix2cd q = letter_matrix(parts.ancilla_letter);
        const Eigen::Vector2cd rotated = q * psi;
        accum += errors[i].probability * (rotated * rotated.adjoint());
    }
    const double trace = accum.trace().real();
    if (trace <= 1e-300) throw std::runtime_error("postselection annihilates the state");
    DensityMatrix state(1);
    state.matrix() = accum / trace;
    return state;
}

}  // namespace evq
