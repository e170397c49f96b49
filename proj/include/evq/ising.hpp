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

#include <string>
#include <utility>
#include <vector>

#include "evq/circuit.hpp"

namespace evq {

/// Undirected simple interaction graph.
struct SpinLattice {
    unsigned n_nodes = 0;
    std::vector<std::pair<unsigned, unsigned>> edges;  // a < b
    std::string kind;  // "ring" or "heavy_hex_cells(k)"

    std::vector<unsigned> neighbors(unsigned site) const;
};

/// Cycle on n nodes (n >= 3).
SpinLattice ring_lattice(unsigned n);

/**
 * Fused hexagonal unit cells with degree-2 bridge nodes on every edge:
 * each hexagon contributes 6 corners plus 6 edge midpoints, and adjacent
 * cells share a full edge. cells = 2 gives 21 nodes, cells = 4 gives 35.
 */
SpinLattice heavy_hex_lattice(unsigned cells);

/// One "a b" pair per line, preceded by a "nodes N" header.
std::string lattice_to_edge_list(const SpinLattice &lattice);
SpinLattice lattice_from_edge_list(const std::string &text, const std::string &kind = "custom");

/// H = J sum_<a,b> Z_a Z_b + h sum_a X_a on the lattice graph.
struct IsingModel {
    SpinLattice lattice;
    double j_coupling = 0;
    double h_field = 0;
};

struct TrotterPlan {
    unsigned steps = 0;  // K
    double tau = 0;      // seconds per step; total time t = K tau
    unsigned measured_site = 0;
};

/**
 * One first-order step of exp(-i H tau): RX(2 h tau) on every site, then
 * RZZ(2 J tau) on every edge, greedily edge-colored into parallel layers.
 */
Circuit trotter_step(const IsingModel &model, double tau);

/// K repeated steps.
Circuit trotter_circuit(const IsingModel &model, unsigned steps, double tau);

/// <Z_site> of the Trotter-evolved all-zeros state (statevector backend).
double trotter_magnetization(const IsingModel &model, const TrotterPlan &plan);

/**
 * M(t) = <0| e^{iHt} Z_site e^{-iHt} |0> by dense eigendecomposition for
 * small lattices and a Krylov propagator above that; lattices beyond 24
 * nodes are rejected.
 */
double exact_magnetization(const IsingModel &model, double t, unsigned site);

/// |M_trotter(t; tau) - M_exact(t)| with K = t / tau steps.
double trotter_error(const IsingModel &model, double t, unsigned site, double tau);

}  // namespace evq
