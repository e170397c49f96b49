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
#include <numbers>
#include <set>
#include <vector>

#include "evq/cdr.hpp"
#include "evq/ising.hpp"
#include "evq/sampling.hpp"

using evq::EvCircuit;
using evq::FitAxis;
using evq::FitWeighting;
using evq::PauliChannel;
using evq::PauliString;
using evq::RegressionFit;
using evq::TrainingCircuitSpec;
using evq::TrainingDatum;

namespace {

constexpr double kPi = std::numbers::pi;

EvCircuit trotter_base(unsigned ring, unsigned steps, double tau, unsigned site) {
    const evq::IsingModel model{evq::ring_lattice(ring), 0.9, 1.1};
    const evq::Circuit u = evq::trotter_circuit(model, steps, tau);
    return evq::lightcone_reduce(
        evq::build_ev_circuit(u, PauliString::single(ring, site, 'Z')));
}

std::vector<TrainingDatum> synthetic_affine(double lambda, double omega,
                                            const std::vector<double> &cs) {
    std::vector<TrainingDatum> data;
    for (const double c : cs) {
        TrainingDatum d;
        d.ideal_value = c;
        d.noisy_x = lambda * (1 - c * c) / (1 + c * c) - omega;
        d.noisy_z = lambda * 2 * c / (1 + c * c);
        data.push_back(d);
    }
    return data;
}

}  // namespace

TEST_CASE("clifford rounding follows the half-away-from-zero rule") {
    CHECK(evq::round_to_clifford(0.7 * kPi) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(evq::round_to_clifford(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(evq::round_to_clifford(kPi / 4) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(evq::round_to_clifford(-kPi / 4) == doctest::Approx(-kPi / 2).epsilon(1e-15));
    const double rounded = evq::round_to_clifford(1.234);
    CHECK(evq::round_to_clifford(rounded) == doctest::Approx(rounded).epsilon(1e-15));
}

TEST_CASE("training-set sampling is deterministic with distinct subsets") {
    const EvCircuit base = trotter_base(12, 3, 0.3, 4);
    const auto pool = evq::lightcone_rotation_indices(base.u, base.observable);
    REQUIRE(pool.size() >= 15);

    const auto a = evq::sample_training_set(base, 3, 12, 77);
    const auto b = evq::sample_training_set(base, 3, 12, 77);
    REQUIRE(a.size() == 12);
    std::set<std::vector<std::size_t>> subsets;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].free_indices == b[i].free_indices);
        CHECK(a[i].free_indices.size() == 3);
        CHECK(subsets.insert(a[i].free_indices).second);
        for (const std::size_t idx : a[i].free_indices)
            CHECK(std::find(pool.begin(), pool.end(), idx) != pool.end());
    }

    for (const auto &spec : evq::sample_training_set(base, 0, 5, 9))
        CHECK(spec.free_indices.empty());
    CHECK_NOTHROW(evq::sample_training_set(base, 15, 3, 5));
    CHECK_THROWS(evq::sample_training_set(base, unsigned(pool.size()) + 1, 3, 5));
}

TEST_CASE("fully Clifford specs have stabilizer ideal values") {
    const EvCircuit base = trotter_base(6, 2, kPi / 4, 2);
    const double ideal = evq::training_ideal_value(base, {{}});
    const bool stabilizer_value = std::abs(ideal) < 1e-12 || std::abs(std::abs(ideal) - 1) < 1e-12;
    CHECK(stabilizer_value);
}

TEST_CASE("bootstrap variance matches the binomial oracle") {
    CHECK(evq::bootstrap_variance(std::vector<int>(50, 1), 100, 4) == 0.0);
    CHECK_THROWS(evq::bootstrap_variance({}, 100, 4));
    CHECK_THROWS(evq::bootstrap_variance({1, -1}, 1, 4));

    std::vector<int> balanced;
    for (int i = 0; i < 400; ++i) balanced.push_back(i % 2 ? 1 : -1);
    const double var = evq::bootstrap_variance(balanced, 1000, 21);
    CHECK(var > 0.8 / 400);
    CHECK(var < 1.2 / 400);
}

TEST_CASE("noiseless training data fit to the identity map") {
    const EvCircuit base = trotter_base(6, 2, 0.35, 2);
    std::vector<TrainingDatum> data;
    for (const auto &spec : evq::sample_training_set(base, 2, 12, 3))
        data.push_back(evq::evaluate_training_exact(base, spec, {}));
    for (const FitAxis axis : {FitAxis::x, FitAxis::z}) {
        const RegressionFit f = evq::fit(data, axis, FitWeighting::ols);
        CHECK(std::abs(f.slope - 1) < 1e-10);
        CHECK(std::abs(f.intercept) < 1e-10);
    }
}

TEST_CASE("exact affine data are recovered exactly") {
    const std::vector<double> cs{-0.9, -0.5, -0.2, 0.1, 0.45, 0.8, 0.95};
    const auto data = synthetic_affine(0.73, 0.11, cs);
    const RegressionFit fx = evq::fit(data, FitAxis::x, FitWeighting::ols);
    CHECK(std::abs(fx.slope - 0.73) < 1e-10);
    CHECK(std::abs(fx.intercept + 0.11) < 1e-10);
    const RegressionFit fz = evq::fit(data, FitAxis::z, FitWeighting::ols);
    CHECK(std::abs(fz.slope - 0.73) < 1e-10);
    CHECK(std::abs(fz.intercept) < 1e-10);

    const RegressionFit fz0 = evq::fit(data, FitAxis::z, FitWeighting::ols, true);
    CHECK(std::abs(fz0.slope - 0.73) < 1e-10);
    CHECK(fz0.intercept == 0.0);
}

TEST_CASE("weighting invariances") {
    const std::vector<double> cs{-0.7, -0.3, 0.2, 0.6, 0.9};
    auto data = synthetic_affine(0.8, 0.05, cs);
    for (auto &d : data) d.var_x = d.var_z = 0.013;  // homoscedastic
    const RegressionFit ols = evq::fit(data, FitAxis::x, FitWeighting::ols);
    const RegressionFit wls = evq::fit(data, FitAxis::x, FitWeighting::wls);
    CHECK(std::abs(ols.slope - wls.slope) < 1e-8);
    CHECK(std::abs(ols.intercept - wls.intercept) < 1e-8);

    auto scaled = data;
    double bump = 1;
    for (auto &d : scaled) d.var_x *= 7;  // global weight rescale
    const RegressionFit wls2 = evq::fit(scaled, FitAxis::x, FitWeighting::wls);
    CHECK(std::abs(wls.slope - wls2.slope) < 1e-12 * bump);
    CHECK(std::abs(wls.intercept - wls2.intercept) < 1e-12);

    CHECK_THROWS(evq::fit(synthetic_affine(1, 0, {0.4, 0.4, 0.4}), FitAxis::x,
                          FitWeighting::ols));
}

TEST_CASE("wls beats ols on heteroscedastic data") {
    evq::SplitMix64 rng(31, 0);
    auto gaussian = [&rng]() {
        const double u1 = std::max(rng.uniform(), 1e-12), u2 = rng.uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * kPi * u2);
    };
    const std::vector<double> cs{-0.8, -0.55, -0.3, -0.1, 0.15, 0.4, 0.6, 0.8, 0.9, 0.97};
    std::vector<double> sigmas{0.02, 0.3, 0.05, 0.25, 0.02, 0.3, 0.04, 0.28, 0.03, 0.25};

    double mean_w = 0, mean_o = 0, var_w = 0, var_o = 0;
    const int trials = 1000;
    std::vector<double> slopes_w, slopes_o;
    for (int t = 0; t < trials; ++t) {
        auto data = synthetic_affine(0.85, 0.0, cs);
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double noise = sigmas[i] * gaussian();
            data[i].noisy_z += noise;
            data[i].var_z = sigmas[i] * sigmas[i];
        }
        slopes_w.push_back(evq::fit(data, FitAxis::z, FitWeighting::wls).slope);
        slopes_o.push_back(evq::fit(data, FitAxis::z, FitWeighting::ols).slope);
    }
    for (int t = 0; t < trials; ++t) {
        mean_w += slopes_w[std::size_t(t)] / trials;
        mean_o += slopes_o[std::size_t(t)] / trials;
    }
    for (int t = 0; t < trials; ++t) {
        var_w += std::pow(slopes_w[std::size_t(t)] - mean_w, 2) / (trials - 1);
        var_o += std::pow(slopes_o[std::size_t(t)] - mean_o, 2) / (trials - 1);
    }
    CHECK(var_w < var_o);
    CHECK(std::abs(mean_w - 0.85) < 0.01);
}

TEST_CASE("identity fits reduce evcdr to the standard estimator") {
    evq::AncillaTomogram t;
    t.e_z = 0.44;
    t.e_x = 0.61;
    const auto standard = evq::estimate(t, evq::EstimatorVariant::standard);
    const auto cdr = evq::evcdr_estimate(t, RegressionFit{}, RegressionFit{});
    CHECK(cdr.value == doctest::Approx(standard.value).epsilon(1e-14));

    RegressionFit zero;
    zero.slope = 0;
    CHECK_THROWS(evq::evcdr_estimate(t, zero, RegressionFit{}));
}

TEST_CASE("exact-mode evcdr inverts a terminal depolarizing channel") {
    const EvCircuit base = trotter_base(6, 2, 0.35, 2);
    const double delta = 0.35;
    std::vector<PauliChannel> channels(base.circuit.gates.size(),
                                       PauliChannel::identity(base.n_system + 1));
    channels.back() = PauliChannel::depolarizing(base.n_system + 1, delta);

    std::vector<TrainingDatum> data;
    for (const auto &spec : evq::sample_training_set(base, 2, 20, 8))
        data.push_back(evq::evaluate_training_exact(base, spec, channels));
    const RegressionFit fx = evq::fit(data, FitAxis::x, FitWeighting::ols);
    const RegressionFit fz = evq::fit(data, FitAxis::z, FitWeighting::ols);
    CHECK(std::abs(fx.slope - (1 - delta)) < 1e-8);
    CHECK(std::abs(fz.slope - (1 - delta)) < 1e-8);

    const auto noisy = evq::exact_ev(base, channels);
    const auto mitigated = evq::evcdr_estimate(noisy.linear_tomogram, fx, fz);
    CHECK(std::abs(mitigated.value - noisy.v_noiseless) < 1e-8);
}

TEST_CASE("sampled noiseless training pairs follow the forward map") {
    const EvCircuit base = trotter_base(6, 2, 0.35, 2);
    const auto specs = evq::sample_training_set(base, 2, 8, 17);
    const TrainingCircuitSpec *chosen = nullptr;
    for (const auto &spec : specs) {
        if (std::abs(evq::training_ideal_value(base, spec)) < 0.9) {
            chosen = &spec;
            break;
        }
    }
    REQUIRE(chosen != nullptr);
    const TrainingDatum d = evq::evaluate_training_sampled(
        base, *chosen, 0.0, 0.0, evq::PostselectionRule::exact(base.n_system), 20000, 99, 0);
    const double c = d.ideal_value;
    CHECK(std::abs(d.noisy_z - 2 * c / (1 + c * c)) < 0.03);
    CHECK(std::abs(d.noisy_x - (1 - c * c) / (1 + c * c)) < 0.03);
    CHECK(d.var_z > 0);
    CHECK(d.var_x > 0);
}
