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

#include "kzcrit/transpile.h"

#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "kzcrit/error.h"
#include "kzcrit/kz_schedule.h"
#include "oracle/dense_oracle.h"

using namespace kzcrit;
using std::numbers::pi;

namespace {

Circuit random_abstract(std::uint32_t L, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<std::uint32_t> qubit(0, L - 1);
    std::uniform_real_distribution<double> ang(-3, 3);
    Circuit c(L);
    while (c.gate_count() < n) {
        const std::uint32_t a = qubit(rng);
        const std::uint32_t b = qubit(rng);
        switch (pick(rng)) {
            case 0:
                c.append(Gate::h(a));
                break;
            case 1:
                c.append(Gate::rx(a, ang(rng)));
                break;
            case 2:
                c.append(Gate::rz(a, ang(rng)));
                break;
            case 3:
                if (a != b) {
                    c.append(Gate::cnot(a, b));
                }
                break;
            case 4:
                if (a != b) {
                    c.append(Gate::uzz(a, b, ang(rng)));
                }
                break;
            default:
                c.append(Gate::ux(a, ang(rng)));
        }
    }
    return c;
}

}  // namespace

TEST(transpile, hh_is_identity) {
    Circuit c(1);
    c.append(Gate::h(0));
    c.append(Gate::h(0));
    EXPECT_TRUE(transpile_native(c).empty());
}

TEST(transpile, cnot_becomes_conjugated_cz) {
    Circuit c(2);
    c.append(Gate::cnot(0, 1));
    const Circuit t = transpile_native(c);
    EXPECT_TRUE(is_native(t));
    int cz = 0;
    for (const auto &g : t.gates()) {
        cz += g.kind == GateKind::kCz;
        if (g.kind != GateKind::kCz) {
            EXPECT_EQ(g.qubits[0], 1u) << "single-qubit gates act on the target only";
        }
    }
    EXPECT_EQ(cz, 1);
    EXPECT_LT(oracle::phase_distance(oracle::unitary(c), oracle::unitary(t)), 1e-12);
}

TEST(transpile, one_trotter_step_at_l3) {
    for (const int order : {1, 2}) {
        const KzSchedule s = KzSchedule::make(3, 1.0, 0.5, order);
        Circuit c = initial_state_circuit(3);
        c.append(trotter_step(s, -0.75));
        const Circuit t = transpile_native(c);
        EXPECT_TRUE(is_native(t));
        EXPECT_LT(oracle::phase_distance(oracle::unitary(c), oracle::unitary(t)), 1e-10);
    }
}

TEST(transpile, random_circuits_keep_unitary) {
    for (std::uint32_t L = 1; L <= 4; L++) {
        for (std::uint64_t seed = 0; seed < 8; seed++) {
            const Circuit c = random_abstract(L, 30, 100 * L + seed);
            const Circuit t = transpile_native(c);
            ASSERT_TRUE(is_native(t));
            EXPECT_LT(oracle::phase_distance(oracle::unitary(c), oracle::unitary(t)), 1e-10)
                << "L=" << L << " seed=" << seed;
        }
    }
}

TEST(transpile, other_kinds_keep_unitary) {
    Circuit c(2);
    c.append(Gate::x(0));
    c.append(Gate::y(1));
    c.append(Gate::z(0));
    c.append(Gate::id(1));
    c.append(Gate::cz(1, 0));
    c.append(Gate::cphase(0, 1, 0.7));
    const Circuit t = transpile_native(c);
    EXPECT_TRUE(is_native(t));
    EXPECT_LT(oracle::phase_distance(oracle::unitary(c), oracle::unitary(t)), 1e-10);
}

TEST(transpile, rotz_merge) {
    Circuit c(1);
    c.append(Gate::rz(0, 0.2));
    c.append(Gate::rz(0, 0.3));
    const Circuit t = transpile_native(c);
    ASSERT_EQ(t.gate_count(), 1u);
    EXPECT_NEAR(t[0].angle, 0.5, 1e-15);
}

TEST(transpile, native_output_only) {
    const Circuit t = transpile_native(build_drive(KzSchedule::make(5, 1.0, 0.25, 2)));
    for (const auto &g : t.gates()) {
        const bool ok = g.kind == GateKind::kRotZ || g.kind == GateKind::kCz || g.kind == GateKind::kRotX;
        EXPECT_TRUE(ok) << gate_name(g.kind);
        if (g.kind == GateKind::kRotX) {
            const double k = g.angle / (pi / 2);
            EXPECT_NEAR(k, std::round(k), 1e-12);
        }
    }
    EXPECT_EQ(t.metadata_value("native"), "1");
    EXPECT_EQ(t.metadata_value("schedule.L"), "5");
}

TEST(transpile, idempotent_on_native) {
    for (std::uint64_t seed = 0; seed < 5; seed++) {
        const Circuit once = transpile_native(random_abstract(3, 40, seed));
        const Circuit twice = transpile_native(once);
        EXPECT_EQ(once.gates().size(), twice.gates().size());
        EXPECT_TRUE(std::equal(once.gates().begin(), once.gates().end(), twice.gates().begin()));
    }
}
