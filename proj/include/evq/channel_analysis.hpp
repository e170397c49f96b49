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

#include <array>
#include <complex>
#include <vector>

#include "evq/channel.hpp"
#include "evq/circuit.hpp"
#include "evq/density.hpp"
#include "evq/pauli.hpp"

namespace evq {

/**
 * Signed rate sums governing the affine distortion of the postselected
 * ancilla expectations: Z damping, X damping and the additive X offset.
 */
struct ChannelFactors {
    double lambda_z = 1;
    double lambda_x = 1;
    double omega_x = 0;
};

/**
 * Groups every channel error by its ancilla letter and whether its system
 * part is Z-type, then evaluates the three signed sums. The convention drops
 * a trailing measurement-frame flip: sign patterns over (I, X, Y, Z) ancilla
 * letters are (+,-,-,+) for lambda_z and (+,+,-,-) for lambda_x / omega_x.
 */
ChannelFactors channel_factors(const PauliChannel &channel, unsigned ancilla_index);

/**
 * Expectations (tr_x, tr_y, tr_z) of the per-error-normalized ancilla
 * mixture sum_i lambda_i Q_i rho_i Q_i, each conditional state rho_i
 * carrying trace 1. In that convention the affine law is exact: the non-Z
 * weight (delta - |Gamma|^2)/(delta + |Gamma|^2) collapses to -1. The
 * physical postselected state reweights by p_{0|i} instead; see
 * predicted_ancilla_state. tr_y is identically zero for Pauli channels.
 */
std::array<double, 3> predict_expectations(const ChannelFactors &factors, double v_exact);

/// Per-error postselection data for noise acting on the prepared EV state.
struct ConditionalPostselection {
    std::vector<double> p0_given;          // p_{0|i} per listed error
    std::vector<std::complex<double>> gamma;  // Gamma_i = <0| U^dag V U P_i^sys |0>
    std::vector<bool> z_type;              // delta_i^Z per listed error
    double p0_overall = 0;                 // sum_i lambda_i p_{0|i}
};

/// The channel acts on u's register plus one ancilla (index u.n_qubits).
ConditionalPostselection conditional_p0(const PauliChannel &channel, const Circuit &u,
                                        const PauliString &v);

/**
 * Closed-form postselected ancilla state for the channel applied once to
 * the prepared EV state, normalized by the noisy p0 (the physical state).
 * Throws when postselection annihilates all mass.
 */
DensityMatrix predicted_ancilla_state(const PauliChannel &channel, const Circuit &u,
                                      const PauliString &v);

}  // namespace evq
