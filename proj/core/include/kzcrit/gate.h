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

#ifndef KZCRIT_GATE_H
#define KZCRIT_GATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace kzcrit {

using complex_t = std::complex<double>;

enum class GateKind : std::uint8_t {
    kHadamard,
    kRotX,
    kRotZ,
    kPauliX,
    kPauliY,
    kPauliZ,
    kIdentity,
    kCnot,
    kCz,
    kCPhase,
    // exp(i*angle*Z(q0)Z(q1)), the Ising bond propagator.
    kUzz,
    // exp(i*angle*X(q)), the transverse-field propagator.
    kUx,
};

inline constexpr int kNumGateKinds = 12;

/// One operation of a circuit. Single-qubit kinds use qubits[0] only; two-qubit
/// kinds use qubits[0] as the first (most significant) index of their 4x4 matrix,
/// e.g. the control of CNOT.
///
/// Angles are normalized into (-2pi, 2pi] when the gate is made. All parameterized
/// matrices are 4pi-periodic, so the normalization never changes the operator.
struct Gate {
    GateKind kind = GateKind::kIdentity;
    std::array<std::uint32_t, 2> qubits{0, 0};
    double angle = 0.0;

    static Gate h(std::uint32_t q);
    static Gate rx(std::uint32_t q, double angle);
    static Gate rz(std::uint32_t q, double angle);
    static Gate x(std::uint32_t q);
    static Gate y(std::uint32_t q);
    static Gate z(std::uint32_t q);
    static Gate id(std::uint32_t q);
    static Gate cnot(std::uint32_t control, std::uint32_t target);
    static Gate cz(std::uint32_t a, std::uint32_t b);
    static Gate cphase(std::uint32_t a, std::uint32_t b, double angle);
    static Gate uzz(std::uint32_t a, std::uint32_t b, double angle);
    static Gate ux(std::uint32_t q, double angle);

    /// Generic factory; validates arity and (for two-qubit kinds) distinct targets.
    static Gate make(GateKind kind, std::uint32_t q0, std::uint32_t q1, double angle);

    bool operator==(const Gate &other) const = default;
};

bool is_two_qubit(GateKind kind);
bool has_angle(GateKind kind);
std::string_view gate_name(GateKind kind);
/// Inverse of gate_name. Throws UnsupportedGateError for unknown names.
GateKind gate_kind_from_name(std::string_view name);

/// Maps an angle into (-2pi, 2pi].
double normalize_angle(double angle);

/// Exact inverse gate (self-inverse kinds are returned unchanged).
Gate inverse(const Gate &g);
/// True when b is exactly the inverse of a on the same targets.
bool is_inverse_pair(const Gate &a, const Gate &b);

/// Matrix in the computational z basis: 2x2 for single-qubit kinds, 4x4 for two-qubit
/// kinds with basis index 2*bit(qubits[0]) + bit(qubits[1]).
/// Throws UnsupportedGateError for a kind outside the enumeration and ArgumentError for
/// a non-finite angle.
Eigen::MatrixXcd gate_matrix(const Gate &g);

}  // namespace kzcrit

#endif
