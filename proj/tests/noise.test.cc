// Copyright 2026 The kzcrit Authors
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

#include "kzcrit/noise.h"

#include <array>
#include <cmath>

#include "gtest/gtest.h"

#include "kzcrit/ensemble.h"
#include "kzcrit/kz_schedule.h"
#include "kzcrit/observables.h"
#include "kzcrit/scaling.h"
#include "oracle/dense_oracle.h"

using namespace kzcrit;

namespace {

Circuit single_cnot() {
    Circuit c(2);
    c.append(Gate::cnot(0, 1));
    return c;
}

double max_diff(const StateVector &a, const StateVector &b) {
    double m = 0;
    for (std::uint64_t i = 0; i < a.dimension(); i++) {
        m = std::max(m, std::abs(a.amplitude(i) - b.amplitude(i)));
    }
    return m;
}

}  // namespace

TEST(noise, zero_probability_leaves_circuit_unchanged) {
    const Circuit c = build_drive(KzSchedule::make(5, 1.0, 0.25, 2));
    const Circuit n = noisy_instance(c, {0.0, 7, 10, true}, 3);
    EXPECT_TRUE(std::equal(c.gates().begin(), c.gates().end(), n.gates().begin(), n.gates().end()));
}

TEST(noise, two_qubit_pairs_uniform_and_never_identity) {
    const Circuit c = single_cnot();
    const NoiseSpec spec{1.0, 2024, 1, true};
    std::array<int, 16> counts{};
    const int draws = 100000;
    for (int id = 0; id < draws; id++) {
        const auto ins = sample_insertions(c, spec, static_cast<std::uint64_t>(id));
        ASSERT_EQ(ins.size(), 1u);
        const int k = 4 * ins[0].paulis[0] + ins[0].paulis[1];
        ASSERT_NE(k, 0);
        counts[k]++;
    }
    const double mean = draws / 15.0;
    const double sigma = std::sqrt(draws * (1 / 15.0) * (14 / 15.0));
    for (int k = 1; k < 16; k++) {
        EXPECT_LT(std::abs(counts[k] - mean), 5 * sigma) << k;
    }
}

TEST(noise, single_qubit_paulis_uniform) {
    Circuit c(1);
    c.append(Gate::h(0));
    const NoiseSpec spec{1.0, 1, 1, true};
    std::array<int, 4> counts{};
    const int draws = 60000;
    for (int id = 0; id < draws; id++) {
        const auto ins = sample_insertions(c, spec, static_cast<std::uint64_t>(id));
        ASSERT_EQ(ins.size(), 1u);
        ASSERT_EQ(ins[0].paulis[1], 0);
        counts[ins[0].paulis[0]]++;
    }
    EXPECT_EQ(counts[0], 0);
    const double sigma = std::sqrt(draws * (1 / 3.0) * (2 / 3.0));
    for (int k = 1; k < 4; k++) {
        EXPECT_LT(std::abs(counts[k] - draws / 3.0), 5 * sigma);
    }
}

TEST(noise, replay_is_deterministic) {
    const Circuit c = build_drive(KzSchedule::make(7, 1.0, 0.1, 2));
    const NoiseSpec spec{0.05, 99, 10, true};
    EXPECT_EQ(sample_insertions(c, spec, 5), sample_insertions(c, spec, 5));
    EXPECT_NE(sample_insertions(c, spec, 5), sample_insertions(c, spec, 6));
    const Circuit a = noisy_instance(c, spec, 5);
    EXPECT_EQ(a, noisy_instance(c, spec, 5));
    EXPECT_EQ(a.metadata_value("noise.trajectory"), "5");
    EXPECT_EQ(a.metadata_value("noise.master_seed"), "99");
    NoiseSpec other = spec;
    other.master_seed = 100;
    EXPECT_NE(sample_insertions(c, spec, 5), sample_insertions(c, other, 5));
}

TEST(noise, expected_insertion_count) {
    const Circuit c = build_drive(KzSchedule::make(9, 2.0, 0.1, 2));
    const double p = 0.01;
    const NoiseSpec spec{p, 3, 1, true};
    const int M = 2000;
    double total = 0;
    for (int id = 0; id < M; id++) {
        total += static_cast<double>(sample_insertions(c, spec, static_cast<std::uint64_t>(id)).size());
    }
    const double n = static_cast<double>(c.gate_count());
    const double mean = M * n * p;
    const double sigma = std::sqrt(M * n * p * (1 - p));
    EXPECT_LT(std::abs(total - mean), 3 * sigma);
}

TEST(noise, preparation_layer_flag) {
    const Circuit c = build_drive(KzSchedule::make(5, 1.0, 0.5, 1));
    NoiseSpec spec{1.0, 1, 1, false};
    const auto ins = sample_insertions(c, spec, 0);
    ASSERT_EQ(ins.size(), c.gate_count() - 5);
    EXPECT_EQ(ins.front().after, 5u);
    EXPECT_EQ(noiseless_prefix(c, spec), 5u);
    spec.noisy_preparation = true;
    EXPECT_EQ(sample_insertions(c, spec, 0).size(), c.gate_count());
}

TEST(noise, inserted_gates_follow_their_gate) {
    const Circuit c = single_cnot();
    const Circuit n = noisy_instance(c, {1.0, 4, 1, true}, 0);
    ASSERT_GE(n.gate_count(), 2u);
    EXPECT_EQ(n[0], Gate::cnot(0, 1));
    for (std::size_t i = 1; i < n.gate_count(); i++) {
        const auto k = n[i].kind;
        EXPECT_TRUE(k == GateKind::kPauliX || k == GateKind::kPauliY || k == GateKind::kPauliZ);
    }
}

TEST(trajectory_engine, matches_plain_simulation) {
    const KzSchedule s = KzSchedule::make(7, 1.0, 0.1, 2);
    KzSchedule padded = s;
    padded.pad_depth = 3;
    for (const Circuit &c : {build_drive(s), build_drive(padded)}) {
        const NoiseSpec spec{0.01, 12, 1, true};
        // Small budget to force sparse checkpoints, and no checkpoints beyond |0>.
        for (const std::size_t budget : {std::size_t{1}, std::size_t{1} << 14, std::size_t{1} << 24}) {
            for (const bool cancel : {false, true}) {
                const TrajectoryEngine engine(c, spec, budget, cancel);
                for (std::uint64_t id = 0; id < 30; id++) {
                    StateVector plain(7);
                    plain.apply(noisy_instance(c, spec, id));
                    EXPECT_LT(max_diff(engine.final_state(id), plain), 1e-12) << id;
                }
            }
        }
    }
}

TEST(ensemble, zero_noise_is_exact) {
    const KzSchedule s = KzSchedule::make(7, 1.0, 0.1, 2);
    const Circuit c = build_drive(s);
    const std::vector<Observable> obs = {
        {"C1", [](const StateVector &st) { return correlation_exact(st, 3, 1).value; }},
        {"E", [s](const StateVector &st) { return energy(st, s, 0.0); }},
    };
    const EnsembleResult r = run_ensemble(c, {0.0, 1, 50, true}, obs);
    StateVector plain(7);
    plain.apply(c);
    // Checkpointed segments fuse gates differently, so agreement is up to rounding.
    EXPECT_NEAR(r.mean[0], correlation_exact(plain, 3, 1).value, 1e-12);
    EXPECT_NEAR(r.mean[1], energy(plain, s, 0.0), 1e-12);
    EXPECT_EQ(r.std_error[0], 0.0);
    EXPECT_EQ(r.std_error[1], 0.0);
    EXPECT_EQ(r.clean_trajectories, 50u);
    EXPECT_EQ(r.index_of("E"), 1u);
}

TEST(ensemble, independent_of_thread_count) {
    const Circuit c = build_drive(KzSchedule::make(7, 1.0, 0.1, 2));
    const std::vector<Observable> obs = {
        {"C2", [](const StateVector &st) { return correlation_exact(st, 3, 2).value; }},
    };
    const NoiseSpec spec{0.01, 5, 200, true};
    EnsembleOptions one;
    one.keep_trajectories = true;
    EnsembleOptions four = one;
    four.threads = 4;
    const EnsembleResult a = run_ensemble(c, spec, obs, one);
    const EnsembleResult b = run_ensemble(c, spec, obs, four);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    ASSERT_EQ(a.per_trajectory.size(), 200u);
    EXPECT_EQ(a.per_trajectory[17].values, b.per_trajectory[17].values);
    EXPECT_EQ(a.per_trajectory[17].id, 17u);
}

TEST(ensemble, matches_channel_enumeration) {
    // L = 2, a short circuit: the trajectory mean of <Z0 Z1> and <X0> agrees with the
    // density-matrix average over every Pauli insertion.
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::rx(1, 0.7));
    const double p = 0.3;
    const auto rho = oracle::channel_density(c, p);
    double zz = 0;
    for (int i = 0; i < 4; i++) {
        zz += rho(i, i).real() * (((i ^ (i >> 1)) & 1) ? -1 : 1);
    }
    const double x0 = 2 * (rho(1, 0).real() + rho(3, 2).real());
    const std::vector<Observable> obs = {
        {"ZZ", [](const StateVector &s) { return expectation_zz(s, 0, 1); }},
        {"X0", [](const StateVector &s) { return expectation_x(s, 0); }},
    };
    const EnsembleResult r = run_ensemble(c, {p, 77, 100000, true}, obs);
    EXPECT_LT(std::abs(r.mean[0] - zz), 5 * r.std_error[0]);
    // <X0> vanishes on every trajectory here, so the estimate is exact.
    EXPECT_LE(std::abs(r.mean[1] - x0), 5 * r.std_error[1] + 1e-12);
}

TEST(ensemble, converges_as_inverse_sqrt_trajectories) {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    const std::vector<Observable> obs = {
        {"ZZ", [](const StateVector &s) { return expectation_zz(s, 0, 1); }},
    };
    double prev = 0;
    for (const std::uint64_t M : {1000u, 4000u, 16000u}) {
        const double e = run_ensemble(c, {0.2, 3, M, true}, obs).std_error[0];
        if (prev > 0) {
            EXPECT_NEAR(prev / e, 2.0, 0.3);
        }
        prev = e;
    }
}

TEST(ensemble, excess_energy_linear_in_p) {
    const KzSchedule s = KzSchedule::make(7, 1.0, 0.1, 2);
    const Circuit c = build_drive(s);
    const std::vector<Observable> obs = {{"E", [s](const StateVector &st) { return energy(st, s, 0.0); }}};
    std::vector<double> ps, excess;
    for (const double p : {1e-3, 2e-3, 4e-3, 7e-3, 1e-2}) {
        const EnsembleResult r = run_ensemble(c, {p, 9, 1500, true}, obs);
        ps.push_back(p);
        excess.push_back(r.mean[0] - r.noiseless[0]);
    }
    const LinearFit f = linear_fit(ps, excess);
    EXPECT_GT(f.slope, 0);
    EXPECT_GT(f.r_squared, 0.98);
}

TEST(ensemble, sampled_ensemble_is_reproducible) {
    const Circuit c = build_drive(KzSchedule::make(5, 1.0, 0.5, 1));
    const NoiseSpec spec{0.08, 31, 64, true};
    const SampleSet a = run_sampled_ensemble(c, spec, 16);
    const SampleSet b = run_sampled_ensemble(c, spec, 16);
    EXPECT_EQ(a.shots, 64u * 16u);
    EXPECT_EQ(a.counts, b.counts);
}
