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

#include "kzcrit/gate.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "kzcrit/circuit.h"
#include "kzcrit/error.h"
#include "oracle/dense_oracle.h"

using namespace kzcrit;
using std::numbers::pi;

namespace {

const std::vector<Gate> &all_kinds() {
    static const std::vector<Gate> gates = {
        Gate::h(0),        Gate::rx(0, 0.37),     Gate::rz(0, -1.2),     Gate::x(0),
        Gate::y(0),        Gate::z(0),            Gate::id(0),           Gate::cnot(0, 1),
        Gate::cz(0, 1),    Gate::cphase(0, 1, 0.9), Gate::uzz(0, 1, 0.41), Gate::ux(0, -0.73),
    };
    return gates;
}

}  // namespace

TEST(gate, hadamard_matrix) {
    const auto m = gate_matrix(Gate::h(0));
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(m(0, 0) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 1) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 0) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 1) + s), 0, 1e-15);
}

TEST(gate, rz_zero_is_identity) {
    const auto m = gate_matrix(Gate::rz(0, 0.0));
    EXPECT_LT((m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(gate, cnot_swaps_10_and_11) {
    Eigen::Matrix4cd expected;
    expected << 1, 0, 0, 0,  //
        0, 1, 0, 0,          //
        0, 0, 0, 1,          //
        0, 0, 1, 0;
    EXPECT_EQ(gate_matrix(Gate::cnot(0, 1)), Eigen::MatrixXcd(expected));
}

TEST(gate, every_kind_is_unitary) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-10, 10);
    for (const auto &g0 : all_kinds()) {
        for (int rep = 0; rep < 20; rep++) {
            Gate g = g0;
            if (has_angle(g.kind)) {
                g = Gate::make(g.kind, g.qubits[0], g.qubits[1], ang(rng));
            }
            const auto m = gate_matrix(g);
            const auto I = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
            EXPECT_LT((m * m.adjoint() - I).cwiseAbs().maxCoeff(), 1e-12) << gate_name(g.kind);
        }
    }
}

TEST(gate, ux_and_uzz_are_exponentials) {
    const double phi = 0.61;
    // Ux(phi) = exp(i phi X) = exp(-i (-X) phi).
    Eigen::Matrix2cd X;
    X << 0, 1, 1, 0;
    EXPECT_LT((gate_matrix(Gate::ux(0, phi)) - oracle::expm_hermitian(-X, phi)).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::Matrix4cd ZZ = Eigen::Matrix4cd::Zero();
    ZZ.diagonal() << 1, -1, -1, 1;
    EXPECT_LT((gate_matrix(Gate::uzz(0, 1, phi)) - oracle::expm_hermitian(-ZZ, phi)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(gate, decompose_uzz_matches_exponential) {
    Eigen::Matrix4cd ZZ = Eigen::Matrix4cd::Zero();
    ZZ.diagonal() << 1, -1, -1, 1;
    for (const double phi : {0.0, pi / 4, pi, 0.123, -2.5}) {
        const Circuit c = decompose_uzz(phi, 0, 1, 2);
        ASSERT_EQ(c.gate_count(), 3u);
        EXPECT_EQ(c[0].kind, GateKind::kCnot);
        EXPECT_EQ(c[1].kind, GateKind::kRotZ);
        EXPECT_EQ(c[1].qubits[0], 1u);
        EXPECT_EQ(c[2].kind, GateKind::kCnot);
        const auto target = oracle::expm_hermitian(-ZZ, phi);
        // The oracle uses qubit 0 as the least significant bit; ZZ is symmetric so the
        // ordering does not matter here.
        EXPECT_LT(oracle::phase_distance(target, oracle::unitary(c)), 1e-12) << phi;
    }
}

TEST(gate, decompose_uzz_pi_is_parity_diagonal) {
    const auto U = oracle::unitary(decompose_uzz(pi, 0, 1, 2));
    EXPECT_LT((U - Eigen::MatrixXcd(U.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(std::abs(U(0, 0) - U(3, 3)), 0, 1e-12);
    EXPECT_NEAR(std::abs(U(1, 1) - U(2, 2)), 0, 1e-12);
}

TEST(gate, two_qubit_targets_must_differ) {
    EXPECT_THROW(Gate::cnot(2, 2), ArgumentError);
    EXPECT_THROW(Gate::make(GateKind::kUzz, 1, 1, 0.3), ArgumentError);
}

TEST(gate, non_finite_angle_rejected) {
    Gate g = Gate::rz(0, 0.5);
    g.angle = std::nan("");
    EXPECT_THROW(gate_matrix(g), ArgumentError);
}

TEST(gate, unknown_kind_rejected) {
    Gate g = Gate::h(0);
    g.kind = static_cast<GateKind>(99);
    EXPECT_THROW(gate_matrix(g), UnsupportedGateError);
    EXPECT_THROW(gate_kind_from_name("XY"), UnsupportedGateError);
}

TEST(gate, names_round_trip) {
    for (const auto &g : all_kinds()) {
        EXPECT_EQ(gate_kind_from_name(gate_name(g.kind)), g.kind);
    }
}

TEST(gate, angle_normalization_range) {
    for (const double a : {0.0, 2 * pi, -2 * pi, 4 * pi, 7.0, -7.0, 100.0, -1e3}) {
        const double n = normalize_angle(a);
        EXPECT_GT(n, -2 * pi - 1e-12);
        EXPECT_LE(n, 2 * pi + 1e-12);
        // Rotations are 4 pi periodic.
        const auto m1 = gate_matrix(Gate::rz(0, a));
        Gate g = Gate::rz(0, 0);
        g.angle = n;
        EXPECT_LT((m1 - gate_matrix(g)).cwiseAbs().maxCoeff(), 1e-9) << a;
    }
}

TEST(gate, inverse_gates) {
    for (const auto &g : all_kinds()) {
        const auto m = gate_matrix(g);
        const auto mi = gate_matrix(inverse(g));
        EXPECT_LT((mi * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(), 1e-12)
            << gate_name(g.kind);
        EXPECT_TRUE(is_inverse_pair(g, inverse(g)));
    }
    EXPECT_FALSE(is_inverse_pair(Gate::rz(0, 0.3), Gate::rz(1, -0.3)));
}
