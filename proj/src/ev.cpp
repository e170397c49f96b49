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
#include "evq/ev.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace evq {

namespace {

double clamp_flag(double v, bool &flag) {
    if (v < -1.0 || v > 1.0) {
        flag = true;
        return std::clamp(v, -1.0, 1.0);
    }
    return v;
}

double mean_outcome(const std::vector<ShotRecord> &records) {
    double sum = 0;
    for (const ShotRecord &r : records) {
        sum += r.ancilla_outcome;
    }
    return sum / double(records.size());
}

double standard_form(double e_x, double e_z) {
    if (1.0 + e_x == 0.0) {
        throw std::domain_error("standard estimator undefined at e_x = -1");
    }
    return e_z / (1.0 + e_x);
}

}  // namespace

EvCircuit build_ev_circuit(const Circuit &u, const PauliString &v) {
    const unsigned n = u.n_qubits;
    if (v.n_qubits() != n) {
        throw std::invalid_argument("observable register size mismatch");
    }
    if (std::abs(v.coefficient().imag()) > 1e-15) {
        throw std::invalid_argument("observable must be Hermitian (real coefficient)");
    }
    EvCircuit ev;
    ev.u = u;
    ev.observable = v;
    ev.n_system = n;
    ev.original_sites.resize(n);
    std::iota(ev.original_sites.begin(), ev.original_sites.end(), 0u);

    Circuit c(n + 1);
    c.h(n);
    c.append(u);
    std::vector<unsigned> target_map(n);
    std::iota(target_map.begin(), target_map.end(), 0u);
    c.controlled_pauli(n, v, target_map);
    c.append(u.inverted());
    c.h(n);
    ev.circuit = std::move(c);
    return ev;
}

namespace {

/**
 * Kept-gate indices of u under back-propagation from v's support, plus the
 * final support mask. Beyond plain overlap, the walk tracks which support
 * qubits provably carry only I/Z letters (those added by RZZ/CZ): diagonal
 * gates commute there and are pruned, so commuting ZZ layers in one Trotter
 * step grow the cone by a single graph hop. v's own qubits make no letter
 * claim and start as general.
 */
std::pair<std::vector<std::size_t>, uint64_t> lightcone_walk(const Circuit &u,
                                                             const PauliString &v) {
    uint64_t support = v.x_bits() | v.z_bits();
    uint64_t general = support;  // qubits that may hold X/Y letters
    std::vector<std::size_t> kept;
    for (std::size_t i = u.gates.size(); i-- > 0;) {
        const GateOp &g = u.gates[i];
        const uint64_t b0 = 1ULL << g.q0;
        const uint64_t b1 = g.arity() == 2 ? 1ULL << g.q1 : 0;
        bool keep = false;
        switch (g.kind) {
            case GateKind::S:
            case GateKind::Sdg:
            case GateKind::Z:
            case GateKind::RZ:
                keep = (general & b0) != 0;
                break;
            case GateKind::X:
            case GateKind::Y:
                keep = (support & b0) != 0;
                break;
            case GateKind::H:
            case GateKind::RX:
                keep = (support & b0) != 0;
                if (keep) general |= b0;
                break;
            case GateKind::CX:
            case GateKind::CY:
                keep = (support & (b0 | b1)) != 0;
                if (keep) {
                    support |= b0 | b1;
                    general |= b0 | b1;
                }
                break;
            case GateKind::CZ:
            case GateKind::RZZ:
                keep = (general & (b0 | b1)) != 0;
                if (keep) support |= b0 | b1;  // additions are Z-only
                break;
        }
        if (keep) kept.push_back(i);
    }
    std::reverse(kept.begin(), kept.end());
    return {kept, support};
}

}  // namespace

std::vector<unsigned> lightcone_sites(const Circuit &u, const PauliString &v) {
    const uint64_t support = lightcone_walk(u, v).second;
    std::vector<unsigned> sites;
    for (unsigned q = 0; q < u.n_qubits; ++q) {
        if (support & (1ULL << q)) {
            sites.push_back(q);
        }
    }
    return sites;
}

std::vector<std::size_t> lightcone_rotation_indices(const Circuit &u, const PauliString &v) {
    const auto kept = lightcone_walk(u, v).first;
    std::vector<std::size_t> rotations;
    for (std::size_t i : kept) {
        if (is_rotation(u.gates[i].kind)) {
            rotations.push_back(i);
        }
    }
    return rotations;
}

EvCircuit lightcone_reduce(const EvCircuit &ev) {
    const auto [kept, support] = lightcone_walk(ev.u, ev.observable);
    std::vector<unsigned> sites;
    std::vector<unsigned> compact(ev.n_system, 0);
    for (unsigned q = 0; q < ev.n_system; ++q) {
        if (support & (1ULL << q)) {
            compact[q] = unsigned(sites.size());
            sites.push_back(q);
        }
    }
    const unsigned m = unsigned(sites.size());
    Circuit reduced_u(m);
    for (std::size_t i : kept) {
        GateOp g = ev.u.gates[i];
        g.q0 = compact[g.q0];
        if (g.arity() == 2) {
            g.q1 = compact[g.q1];
        }
        reduced_u.push(g);
    }
    uint64_t x = 0, z = 0;
    for (unsigned j = 0; j < m; ++j) {
        x |= ((ev.observable.x_bits() >> sites[j]) & 1ULL) << j;
        z |= ((ev.observable.z_bits() >> sites[j]) & 1ULL) << j;
    }
    // Same letters, same coefficient: the Y count is unchanged, so the phase
    // power carries over.
    const PauliString reduced_v(m, x, z, ev.observable.phase_power());

    // Compose site maps so a twice-reduced circuit still reports original labels.
    EvCircuit out = build_ev_circuit(reduced_u, reduced_v);
    out.original_sites.clear();
    for (unsigned s : sites) {
        out.original_sites.push_back(ev.original_sites[s]);
    }
    return out;
}

PostselectionRule PostselectionRule::exact(unsigned n_system) {
    PostselectionRule rule;
    rule.neighborhood.resize(n_system);
    std::iota(rule.neighborhood.begin(), rule.neighborhood.end(), 0u);
    rule.max_hamming = 0;
    return rule;
}

std::pair<std::vector<ShotRecord>, double> postselect(const std::vector<ShotRecord> &records,
                                                      const PostselectionRule &rule) {
    if (records.empty()) {
        throw std::invalid_argument("postselect needs at least one record");
    }
    uint64_t nb_mask = 0;
    for (unsigned q : rule.neighborhood) {
        nb_mask |= 1ULL << q;
    }
    std::vector<ShotRecord> kept;
    for (const ShotRecord &r : records) {
        if ((r.system_bits & nb_mask) != 0) {
            continue;
        }
        if (unsigned(std::popcount(r.system_bits & ~nb_mask)) > rule.max_hamming) {
            continue;
        }
        kept.push_back(r);
    }
    return {kept, double(kept.size()) / double(records.size())};
}

double AncillaTomogram::bloch_norm() const {
    return std::sqrt(e_x * e_x + e_y * e_y + e_z * e_z);
}

double AncillaTomogram::purity() const {
    const double r = bloch_norm();
    return (1.0 + r * r) / 2.0;
}

AncillaTomogram tomograph(const std::vector<ShotRecord> &kept_x,
                          const std::vector<ShotRecord> &kept_z,
                          const std::vector<ShotRecord> &kept_y, double p0_hat,
                          std::size_t n_total) {
    if (kept_x.empty() || kept_z.empty()) {
        throw std::runtime_error("tomography basis kept no shots");
    }
    AncillaTomogram t;
    t.e_x = mean_outcome(kept_x);
    t.e_z = mean_outcome(kept_z);
    if (!kept_y.empty()) {
        t.e_y = mean_outcome(kept_y);
        t.has_y = true;
    }
    t.p0_hat = p0_hat;
    t.n_total = n_total;
    t.n_kept = kept_x.size() + kept_z.size() + kept_y.size();
    return t;
}

std::string variant_name(EstimatorVariant v) {
    switch (v) {
        case EstimatorVariant::standard: return "standard";
        case EstimatorVariant::z_bias: return "z_bias";
        case EstimatorVariant::z_bias_sq: return "z_bias_sq";
        case EstimatorVariant::x_bias: return "x_bias";
        case EstimatorVariant::purity_normalized: return "purity_normalized";
        case EstimatorVariant::spectral_purified: return "spectral_purified";
        case EstimatorVariant::depolarization_tolerant: return "depolarization_tolerant";
        case EstimatorVariant::evcdr: return "evcdr";
    }
    throw std::logic_error("unreachable variant");
}

EstimatorVariant variant_from_name(const std::string &name) {
    for (EstimatorVariant v :
         {EstimatorVariant::standard, EstimatorVariant::z_bias, EstimatorVariant::z_bias_sq,
          EstimatorVariant::x_bias, EstimatorVariant::purity_normalized,
          EstimatorVariant::spectral_purified, EstimatorVariant::depolarization_tolerant,
          EstimatorVariant::evcdr}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    throw std::invalid_argument("unknown estimator variant: " + name);
}

EstimatorResult estimate(const AncillaTomogram &t, EstimatorVariant variant,
                         const EstimatorContext &ctx) {
    EstimatorResult res;
    res.variant = variant;
    res.variance = ctx.variance;
    const double e_x = clamp_flag(t.e_x, res.clamped);
    const double e_y = clamp_flag(t.e_y, res.clamped);
    const double e_z = clamp_flag(t.e_z, res.clamped);
    switch (variant) {
        case EstimatorVariant::standard:
            res.value = standard_form(e_x, e_z);
            return res;
        case EstimatorVariant::z_bias:
            res.value = e_z / (1.0 + std::sqrt(1.0 - e_z));
            return res;
        case EstimatorVariant::z_bias_sq:
            res.value = e_z / (1.0 + std::sqrt(1.0 - e_z * e_z));
            return res;
        case EstimatorVariant::x_bias: {
            if (1.0 + e_x == 0.0) {
                throw std::domain_error("x-bias estimator undefined at e_x = -1");
            }
            const double mag = std::sqrt((1.0 - e_x) / (1.0 + e_x));
            res.value = e_z < 0 ? -mag : mag;
            return res;
        }
        case EstimatorVariant::purity_normalized: {
            const double r = std::sqrt(e_x * e_x + e_y * e_y + e_z * e_z);
            if (r < 1e-12) {
                res.degenerate = true;
                res.value = standard_form(e_x, e_z);
                return res;
            }
            res.value = standard_form(e_x / r, e_z / r);
            return res;
        }
        case EstimatorVariant::spectral_purified: {
            Eigen::Matrix2cd rho;
            rho << 0.5 * (1 + e_z), 0.5 * std::complex<double>(e_x, -e_y),
                0.5 * std::complex<double>(e_x, e_y), 0.5 * (1 - e_z);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho);
            const double gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
            if (gap < 1e-12) {
                res.degenerate = true;
                res.value = standard_form(e_x, e_z);
                return res;
            }
            const Eigen::Vector2cd phi = solver.eigenvectors().col(1);
            const double px = 2.0 * (std::conj(phi(0)) * phi(1)).real();
            const double pz = std::norm(phi(0)) - std::norm(phi(1));
            res.value = standard_form(px, pz);
            return res;
        }
        case EstimatorVariant::depolarization_tolerant: {
            if (ctx.delta >= 1.0) {
                throw std::domain_error("depolarization-tolerant estimator undefined at delta = 1");
            }
            if (ctx.dim <= 0) {
                throw std::invalid_argument("tolerant estimator needs the Hilbert dimension");
            }
            res.value =
                standard_form(e_x, e_z) * (1.0 + 2.0 * ctx.delta / (ctx.dim * (1.0 - ctx.delta)));
            return res;
        }
        case EstimatorVariant::evcdr:
            throw std::invalid_argument("evcdr needs regression fits; use evcdr_estimate");
    }
    throw std::logic_error("unreachable variant");
}

double estimate_depolarization_rate(const AncillaTomogram &t, double dim) {
    const double gamma = t.purity();
    if (gamma <= 0.5) {
        throw std::domain_error("ancilla purity at or below 1/2; depolarization rate undefined");
    }
    return dim * t.p0_hat * (1.0 - gamma) / (1.0 + std::sqrt(2.0 * gamma - 1.0));
}

ExactEvResult exact_ev(const EvCircuit &ev, const std::vector<PauliChannel> &channels) {
    const unsigned n = ev.n_system;
    if (!channels.empty() && channels.size() != ev.circuit.gates.size()) {
        throw std::invalid_argument("channel list must be empty or match the gate count");
    }
    DensityMatrix rho(n + 1);
    for (std::size_t i = 0; i < ev.circuit.gates.size(); ++i) {
        rho.apply_gate(ev.circuit.gates[i]);
        if (!channels.empty() && !channels[i].is_identity()) {
            rho.apply_channel(channels[i]);
        }
    }
    const uint64_t system_mask = (1ULL << n) - 1;
    const double p0 = rho.project([system_mask](uint64_t b) { return (b & system_mask) == 0; });
    if (p0 <= 0) {
        throw std::runtime_error("postselection annihilated the state");
    }
    DensityMatrix anc = rho.partial_trace_keep({n});

    ExactEvResult out;
    const double tx = anc.expectation(PauliString::parse("X"));
    const double ty = anc.expectation(PauliString::parse("Y"));
    const double tz = anc.expectation(PauliString::parse("Z"));

    const Statevector psi = run_circuit(ev.u);
    out.v_noiseless = psi.expectation(ev.observable);
    const double p0_ideal = (1.0 + out.v_noiseless * out.v_noiseless) / 2.0;

    auto fill = [&](double denom) {
        AncillaTomogram t;
        t.e_x = tx / denom;
        t.e_y = ty / denom;
        t.e_z = tz / denom;
        t.has_y = true;
        t.p0_hat = p0;
        t.n_total = 0;
        t.n_kept = 0;
        return t;
    };
    out.true_tomogram = fill(p0);
    out.linear_tomogram = fill(p0_ideal);
    anc.normalize();
    out.purity = anc.purity();
    out.ancilla_state = std::move(anc);
    out.p0 = p0;
    return out;
}

SampledEvResult sample_ev(const NoisyCircuit &noisy_ev, unsigned ancilla,
                          const PostselectionRule &rule, std::size_t shots_per_basis,
                          uint64_t seed, uint64_t stream0, bool measure_y,
                          unsigned n_threads) {
    std::vector<char> bases = {'X', 'Z'};
    if (measure_y) {
        bases.push_back('Y');
    }
    SampledEvResult out;
    std::size_t total = 0, total_kept = 0;
    for (std::size_t b = 0; b < bases.size(); ++b) {
        const auto records = sample_trajectories(noisy_ev, ancilla, bases[b], shots_per_basis,
                                                 seed, stream0 + b * shots_per_basis, n_threads);
        auto [kept, frac] = postselect(records, rule);
        (void)frac;
        total += records.size();
        total_kept += kept.size();
        switch (bases[b]) {
            case 'X': out.kept_x = std::move(kept); break;
            case 'Y': out.kept_y = std::move(kept); break;
            default: out.kept_z = std::move(kept); break;
        }
    }
    const double p0_hat = double(total_kept) / double(total);
    out.tomogram = tomograph(out.kept_x, out.kept_z, out.kept_y, p0_hat, total);
    return out;
}

}  // namespace evq
