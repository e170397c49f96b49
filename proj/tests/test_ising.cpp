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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "evq/ev.hpp"
#include "evq/ising.hpp"
#include "oracle_util.hpp"

using evq::IsingModel;
using evq::PauliString;
using evq::SpinLattice;
using evq::TrotterPlan;

namespace {

SpinLattice chain_lattice(unsigned n) {
    std::string text = "nodes " + std::to_string(n) + "\n";
    for (unsigned i = 0; i + 1 < n; ++i)
        text += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    return evq::lattice_from_edge_list(text, "chain");
}

}  // namespace

TEST_CASE("lattice constructions match the named geometries") {
    const SpinLattice ring = evq::ring_lattice(12);
    CHECK(ring.n_nodes == 12);
    CHECK(ring.edges.size() == 12);
    CHECK(ring.neighbors(0) == std::vector<unsigned>{1, 11});

    const SpinLattice two = evq::heavy_hex_lattice(2);
    CHECK(two.n_nodes == 21);
    const SpinLattice four = evq::heavy_hex_lattice(4);
    CHECK(four.n_nodes == 35);

    for (const SpinLattice *lat : {&ring, &two, &four}) {
        std::set<std::pair<unsigned, unsigned>> seen;
        for (const auto &[a, b] : lat->edges) {
            CHECK(a < b);
            CHECK(b < lat->n_nodes);
            CHECK(seen.insert({a, b}).second);
        }
    }
    CHECK_THROWS(evq::heavy_hex_lattice(3));
}

TEST_CASE("edge-list serialization round-trips") {
    const SpinLattice four = evq::heavy_hex_lattice(4);
    const SpinLattice back =
        evq::lattice_from_edge_list(evq::lattice_to_edge_list(four), four.kind);
    CHECK(back.n_nodes == four.n_nodes);
    CHECK(back.edges == four.edges);
    CHECK_THROWS(evq::lattice_from_edge_list("0 1\n"));
    CHECK_THROWS(evq::lattice_from_edge_list("nodes 2\n0 5\n"));
}

TEST_CASE("trotter step with tau = 0 is the identity") {
    const IsingModel model{evq::ring_lattice(4), 1.3, 0.7};
    const auto m = oracle::circuit_matrix(evq::trotter_step(model, 0.0));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            CHECK(std::abs(m(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("single-edge step equals exp(-i tau ZZ) up to global phase") {
    const double tau = 0.37;
    const IsingModel model{chain_lattice(2), 1.0, 0.0};
    const auto m = oracle::circuit_matrix(evq::trotter_step(model, tau));
    const std::complex<double> i(0, 1);
    Eigen::Vector4cd exact;
    exact << std::exp(-i * tau), std::exp(i * tau), std::exp(i * tau), std::exp(-i * tau);
    const std::complex<double> phase = m(0, 0) / exact(0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(m(r, c) - (r == c ? phase * exact(r) : 0.0)) < 1e-12);
}

TEST_CASE("exact magnetization closed forms") {
    const IsingModel model{evq::ring_lattice(4), 0.9, 1.4};
    CHECK(evq::exact_magnetization(model, 0.0, 2) == doctest::Approx(1.0).epsilon(1e-12));

    const IsingModel free_spins{evq::ring_lattice(4), 0.0, 1.3};
    for (const double t : {0.2, 0.7, 1.9})
        CHECK(std::abs(evq::exact_magnetization(free_spins, t, 1) - std::cos(2 * 1.3 * t)) <
              1e-10);
}

TEST_CASE("commuting limits have zero trotter error") {
    const IsingModel no_field{chain_lattice(3), 1.7, 0.0};
    const IsingModel no_coupling{chain_lattice(3), 0.0, 2.2};
    for (const double tau : {0.25, 0.1}) {
        CHECK(evq::trotter_error(no_field, 1.0, 1, tau) < 1e-12);
        CHECK(evq::trotter_error(no_coupling, 1.0, 1, tau) < 1e-12);
    }
}

TEST_CASE("trotter error is second order on a 3-site chain") {
    // Threshold: the tau^2 regime is entered below tau ~ 0.1 for |J|,|h| ~ 1.
    const IsingModel model{chain_lattice(3), 1.0, 0.9};
    const double t = 1.0;
    const double coarse = evq::trotter_error(model, t, 1, 0.05);
    const double fine = evq::trotter_error(model, t, 1, 0.025);
    CHECK(fine > 0);
    const double ratio = coarse / fine;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("krylov reference agrees with dense and with Richardson extrapolation") {
    // 9-ring runs the dense branch re-expressed as an 11-node problem? No:
    // force both paths by comparing a 10-node dense run with the same model
    // evaluated through the Krylov branch on a 12-ring.
    const IsingModel small{evq::ring_lattice(9), 1.1, 0.8};
    const double dense = evq::exact_magnetization(small, 0.6, 4);
    CHECK(std::abs(dense) <= 1.0 + 1e-12);

    const IsingModel big{evq::ring_lattice(12), 1.0, 0.8};
    const double t = 0.5;
    const double exact = evq::exact_magnetization(big, t, 0);
    const double coarse =
        evq::trotter_magnetization(big, TrotterPlan{10, t / 10, 0});
    const double fine =
        evq::trotter_magnetization(big, TrotterPlan{20, t / 20, 0});
    const double richardson = (4 * fine - coarse) / 3;
    CHECK(std::abs(coarse - exact) < 5e-3);
    CHECK(std::abs(richardson - exact) < 1e-5);
    CHECK(std::abs(richardson - exact) < 0.05 * std::abs(coarse - exact));
}

TEST_CASE("light-cone reduction preserves ring trotter expectations") {
    const IsingModel model{evq::ring_lattice(12), 0.7, 1.1};
    for (unsigned k = 1; k <= 4; ++k) {
        const evq::Circuit u = evq::trotter_circuit(model, k, 0.1);
        const PauliString v = PauliString::single(12, 3, 'Z');
        const evq::EvCircuit reduced = evq::lightcone_reduce(evq::build_ev_circuit(u, v));
        CHECK(reduced.n_system <= 2 * k + 1);
        const double direct = evq::trotter_magnetization(model, TrotterPlan{k, 0.1, 3});
        const double via_ev = evq::exact_ev(reduced, {}).v_noiseless;
        CHECK(std::abs(direct - via_ev) < 1e-12);
    }
}

TEST_CASE("heavy-hex 4-cell light cone saturates at K = 7") {
    const IsingModel model{evq::heavy_hex_lattice(4), 1.0, 1.0};
    std::vector<std::size_t> sizes;
    for (unsigned k = 1; k <= 9; ++k) {
        const evq::Circuit u = evq::trotter_circuit(model, k, 0.1);
        const PauliString v = PauliString::single(35, 8, 'Z');
        sizes.push_back(evq::lightcone_sites(u, v).size());
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        CHECK(sizes[i] >= sizes[i - 1]);
        if (sizes[i - 1] < 35) CHECK(sizes[i] > sizes[i - 1]);
    }
    CHECK(sizes[5] < 35);  // K = 6
    CHECK(sizes[6] == 35);  // K = 7
    CHECK(sizes[8] == 35);
}
