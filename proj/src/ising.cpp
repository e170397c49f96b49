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
#include "evq/ising.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "evq/pauli.hpp"
#include "evq/statevector.hpp"

namespace evq {

std::vector<unsigned> SpinLattice::neighbors(unsigned site) const {
    std::vector<unsigned> out;
    for (const auto &[a, b] : edges) {
        if (a == site) out.push_back(b);
        if (b == site) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpinLattice ring_lattice(unsigned n) {
    if (n < 3) throw std::invalid_argument("ring lattice needs at least 3 nodes");
    SpinLattice lattice;
    lattice.n_nodes = n;
    lattice.kind = "ring";
    for (unsigned i = 0; i < n; ++i) {
        const unsigned j = (i + 1) % n;
        lattice.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(lattice.edges.begin(), lattice.edges.end());
    return lattice;
}

namespace {

struct Point {
    double x, y;
};

// Hexagon of circumradius sqrt(1/3): adjacent cell centers sit at distance 1.
std::vector<Point> hexagon_nodes(Point center) {
    std::vector<Point> nodes;
    const double radius = std::sqrt(1.0 / 3.0);
    for (int t = 0; t < 6; ++t) {
        const double a = (t - 0.5) * std::numbers::pi / 3;
        nodes.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    for (int t = 0; t < 6; ++t) {
        const double a = (t - 1.0) * std::numbers::pi / 3;
        nodes.push_back({center.x + 0.5 * std::cos(a), center.y + 0.5 * std::sin(a)});
    }
    return nodes;
}

}  // namespace

SpinLattice heavy_hex_lattice(unsigned cells) {
    std::vector<Point> centers;
    const double row = std::sqrt(3.0) / 2;
    if (cells == 2) {
        centers = {{0, 0}, {0.5, row}};
    } else if (cells == 4) {
        centers = {{0, 0}, {1, 0}, {-0.5, row}, {0.5, row}};
    } else {
        throw std::invalid_argument("heavy-hex lattice supports 2 or 4 cells");
    }

    std::vector<Point> nodes;
    auto index_of = [&](Point p) -> unsigned {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (std::abs(nodes[i].x - p.x) < 1e-6 && std::abs(nodes[i].y - p.y) < 1e-6)
                return unsigned(i);
        }
        nodes.push_back(p);
        return unsigned(nodes.size() - 1);
    };

    SpinLattice lattice;
    lattice.kind = "heavy_hex_cells(" + std::to_string(cells) + ")";
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (const Point &center : centers) {
        const std::vector<Point> hex = hexagon_nodes(center);
        // Each edge midpoint bridges its two nearest corners.
        for (int m = 6; m < 12; ++m) {
            const unsigned mid = index_of(hex[m]);
            std::vector<std::pair<double, unsigned>> corners;
            for (int c = 0; c < 6; ++c) {
                const double dx = hex[m].x - hex[c].x, dy = hex[m].y - hex[c].y;
                corners.emplace_back(dx * dx + dy * dy, index_of(hex[c]));
            }
            std::sort(corners.begin(), corners.end());
            for (int k = 0; k < 2; ++k) {
                const unsigned c = corners[k].second;
                edges.emplace_back(std::min(mid, c), std::max(mid, c));
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    lattice.edges = std::move(edges);
    lattice.n_nodes = unsigned(nodes.size());
    return lattice;
}

std::string lattice_to_edge_list(const SpinLattice &lattice) {
    std::ostringstream out;
    out << "nodes " << lattice.n_nodes << "\n";
    for (const auto &[a, b] : lattice.edges) out << a << " " << b << "\n";
    return out.str();
}

SpinLattice lattice_from_edge_list(const std::string &text, const std::string &kind) {
    std::istringstream in(text);
    std::string token;
    SpinLattice lattice;
    lattice.kind = kind;
    if (!(in >> token >> lattice.n_nodes) || token != "nodes")
        throw std::invalid_argument("edge list must start with a 'nodes N' header");
    unsigned a, b;
    while (in >> a >> b) {
        if (a == b || a >= lattice.n_nodes || b >= lattice.n_nodes)
            throw std::invalid_argument("edge list references an invalid node");
        lattice.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(lattice.edges.begin(), lattice.edges.end());
    lattice.edges.erase(std::unique(lattice.edges.begin(), lattice.edges.end()),
                        lattice.edges.end());
    return lattice;
}

Circuit trotter_step(const IsingModel &model, double tau) {
    const SpinLattice &lattice = model.lattice;
    Circuit step(lattice.n_nodes);
    for (unsigned q = 0; q < lattice.n_nodes; ++q) step.rx(q, 2 * model.h_field * tau);

    // Greedy proper edge coloring; colors become parallel RZZ layers.
    std::vector<int> color(lattice.edges.size(), -1);
    int n_colors = 0;
    for (std::size_t e = 0; e < lattice.edges.size(); ++e) {
        std::vector<bool> used(lattice.edges.size(), false);
        for (std::size_t f = 0; f < e; ++f) {
            const bool touches = lattice.edges[e].first == lattice.edges[f].first ||
                                 lattice.edges[e].first == lattice.edges[f].second ||
                                 lattice.edges[e].second == lattice.edges[f].first ||
                                 lattice.edges[e].second == lattice.edges[f].second;
            if (touches) used[std::size_t(color[f])] = true;
        }
        int c = 0;
        while (used[std::size_t(c)]) ++c;
        color[e] = c;
        n_colors = std::max(n_colors, c + 1);
    }
    for (int c = 0; c < n_colors; ++c) {
        for (std::size_t e = 0; e < lattice.edges.size(); ++e) {
            if (color[e] == c)
                step.rzz(lattice.edges[e].first, lattice.edges[e].second,
                         2 * model.j_coupling * tau);
        }
    }
    return step;
}

Circuit trotter_circuit(const IsingModel &model, unsigned steps, double tau) {
    Circuit circuit(model.lattice.n_nodes);
    const Circuit step = trotter_step(model, tau);
    for (unsigned k = 0; k < steps; ++k) circuit.append(step);
    return circuit;
}

double trotter_magnetization(const IsingModel &model, const TrotterPlan &plan) {
    const unsigned n = model.lattice.n_nodes;
    if (n > 24) throw std::invalid_argument("lattice too large for statevector evaluation");
    Statevector psi(n);
    psi.apply(trotter_circuit(model, plan.steps, plan.tau));
    return psi.expectation(PauliString::single(n, plan.measured_site, 'Z'));
}

namespace {

// Diagonal of J sum_<a,b> Z_a Z_b over computational basis strings.
std::vector<double> zz_diagonal(const IsingModel &model) {
    const std::size_t dim = std::size_t{1} << model.lattice.n_nodes;
    std::vector<double> diag(dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        int sum = 0;
        for (const auto &[a, c] : model.lattice.edges) {
            const int sa = (b >> a) & 1 ? -1 : 1;
            const int sc = (b >> c) & 1 ? -1 : 1;
            sum += sa * sc;
        }
        diag[b] = model.j_coupling * sum;
    }
    return diag;
}

using cvec = Eigen::VectorXcd;

// y = H x with H = J sum ZZ + h sum X.
void apply_hamiltonian(const IsingModel &model, const std::vector<double> &diag, const cvec &x,
                       cvec &y) {
    const unsigned n = model.lattice.n_nodes;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t b = 0; b < dim; ++b) y[long(b)] = diag[b] * x[long(b)];
    for (unsigned q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t b = 0; b < dim; ++b) y[long(b)] += model.h_field * x[long(b ^ bit)];
    }
}

// Krylov (Lanczos) approximation of e^{-iHt} psi, substepped so the scaled
// norm stays well inside the basis size.
void krylov_propagate(const IsingModel &model, const std::vector<double> &diag, double t,
                      cvec &psi) {
    if (t == 0) return;
    const double bound = std::abs(model.j_coupling) * double(model.lattice.edges.size()) +
                         std::abs(model.h_field) * double(model.lattice.n_nodes);
    const int n_sub = std::max(1, int(std::ceil(std::abs(t) * bound / 4)));
    const double dt = t / n_sub;
    const int m = std::min<long>(24, psi.size());

    for (int sub = 0; sub < n_sub; ++sub) {
        const double beta0 = psi.norm();
        if (beta0 == 0) return;
        std::vector<cvec> basis;
        basis.push_back(psi / beta0);
        Eigen::VectorXd alpha(m), beta(m);
        int used = m;
        cvec w(psi.size());
        for (int j = 0; j < m; ++j) {
            apply_hamiltonian(model, diag, basis[std::size_t(j)], w);
            if (j > 0) w -= beta[j - 1] * basis[std::size_t(j - 1)];
            alpha[j] = w.dot(basis[std::size_t(j)]).real();
            w -= alpha[j] * basis[std::size_t(j)];
            for (const cvec &v : basis) w -= v.dot(w) * v;  // re-orthogonalize
            beta[j] = w.norm();
            if (j + 1 < m) {
                if (beta[j] < 1e-14) {
                    used = j + 1;
                    break;
                }
                basis.push_back(w / beta[j]);
            }
        }
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(used, used);
        for (int j = 0; j < used; ++j) {
            tri(j, j) = alpha[j];
            if (j + 1 < used) tri(j, j + 1) = tri(j + 1, j) = beta[j];
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
        const std::complex<double> minus_i(0, -1);
        Eigen::VectorXcd phase(used);
        for (int j = 0; j < used; ++j) phase[j] = std::exp(minus_i * dt * eig.eigenvalues()[j]);
        const Eigen::MatrixXcd u = eig.eigenvectors().cast<std::complex<double>>();
        const Eigen::VectorXcd small = u * (phase.asDiagonal() * u.row(0).transpose().conjugate());
        psi.setZero();
        for (int j = 0; j < used; ++j) psi += beta0 * small[j] * basis[std::size_t(j)];
    }
}

}  // namespace

double exact_magnetization(const IsingModel &model, double t, unsigned site) {
    const unsigned n = model.lattice.n_nodes;
    if (site >= n) throw std::invalid_argument("measured site outside the lattice");
    if (n > 24) throw std::invalid_argument("lattice too large for exact evaluation");
    const std::size_t dim = std::size_t{1} << n;
    const std::vector<double> diag = zz_diagonal(model);

    cvec psi = cvec::Zero(long(dim));
    psi[0] = 1;
    if (n <= 10) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(long(dim), long(dim));
        for (std::size_t b = 0; b < dim; ++b) {
            h(long(b), long(b)) = diag[b];
            for (unsigned q = 0; q < n; ++q)
                h(long(b), long(b ^ (std::size_t{1} << q))) += model.h_field;
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
        const std::complex<double> minus_i(0, -1);
        Eigen::VectorXcd phase = Eigen::VectorXcd::Zero(long(dim));
        for (long j = 0; j < long(dim); ++j) phase[j] = std::exp(minus_i * t * eig.eigenvalues()[j]);
        const Eigen::MatrixXcd u = eig.eigenvectors().cast<std::complex<double>>();
        psi = u * (phase.asDiagonal() * u.row(0).transpose().conjugate());
    } else {
        krylov_propagate(model, diag, t, psi);
    }

    double m = 0;
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (b >> site) & 1 ? -1.0 : 1.0;
        m += sign * std::norm(psi[long(b)]);
    }
    return m;
}

double trotter_error(const IsingModel &model, double t, unsigned site, double tau) {
    if (tau <= 0) throw std::invalid_argument("tau must be positive");
    const long steps = std::lround(t / tau);
    if (steps < 0 || std::abs(double(steps) * tau - t) > 1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument("t must be an integer number of tau steps");
    TrotterPlan plan{unsigned(steps), tau, site};
    return std::abs(trotter_magnetization(model, plan) - exact_magnetization(model, t, site));
}

}  // namespace evq
