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
#include <string>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindInfo {
    std::string_view name;
    bool two_qubit;
    bool angle;
};

constexpr KindInfo kKinds[kNumGateKinds] = {
    {"H", false, false},    {"RX", false, true},  {"RZ", false, true},
    {"X", false, false},    {"Y", false, false},  {"Z", false, false},
    {"I", false, false},    {"CNOT", true, false}, {"CZ", true, false},
    {"CPHASE", true, true}, {"UZZ", true, true},  {"UX", false, true},
};

const KindInfo &info(GateKind kind) {
    auto k = static_cast<int>(kind);
    if (k < 0 || k >= kNumGateKinds) {
        throw UnsupportedGateError("unsupported gate kind " + std::to_string(k));
    }
    return kKinds[k];
}

}  // namespace

bool is_two_qubit(GateKind kind) { return info(kind).two_qubit; }
bool has_angle(GateKind kind) { return info(kind).angle; }
std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
    for (int k = 0; k < kNumGateKinds; k++) {
        if (kKinds[k].name == name) {
            return static_cast<GateKind>(k);
        }
    }
    throw UnsupportedGateError("unsupported gate '" + std::string(name) + "'");
}

double normalize_angle(double angle) {
    if (!std::isfinite(angle)) {
        return angle;
    }
    if (angle > -2 * kPi && angle <= 2 * kPi) {
        return angle;
    }
    double r = std::fmod(angle, 4 * kPi);
    if (r <= -2 * kPi) {
        r += 4 * kPi;
    } else if (r > 2 * kPi) {
        r -= 4 * kPi;
    }
    return r;
}

Gate Gate::make(GateKind kind, std::uint32_t q0, std::uint32_t q1, double angle) {
    const KindInfo &k = info(kind);
    Gate g;
    g.kind = kind;
    if (k.two_qubit) {
        if (q0 == q1) {
            throw ArgumentError(std::string(k.name) + " needs two distinct qubits, got " +
                                std::to_string(q0) + " twice");
        }
        g.qubits = {q0, q1};
    } else {
        g.qubits = {q0, q0};
    }
    g.angle = k.angle ? normalize_angle(angle) : 0.0;
    return g;
}

Gate Gate::h(std::uint32_t q) { return make(GateKind::kHadamard, q, q, 0); }
Gate Gate::rx(std::uint32_t q, double angle) { return make(GateKind::kRotX, q, q, angle); }
Gate Gate::rz(std::uint32_t q, double angle) { return make(GateKind::kRotZ, q, q, angle); }
Gate Gate::x(std::uint32_t q) { return make(GateKind::kPauliX, q, q, 0); }
Gate Gate::y(std::uint32_t q) { return make(GateKind::kPauliY, q, q, 0); }
Gate Gate::z(std::uint32_t q) { return make(GateKind::kPauliZ, q, q, 0); }
Gate Gate::id(std::uint32_t q) { return make(GateKind::kIdentity, q, q, 0); }
Gate Gate::cnot(std::uint32_t c, std::uint32_t t) { return make(GateKind::kCnot, c, t, 0); }
Gate Gate::cz(std::uint32_t a, std::uint32_t b) { return make(GateKind::kCz, a, b, 0); }
Gate Gate::cphase(std::uint32_t a, std::uint32_t b, double angle) {
    return make(GateKind::kCPhase, a, b, angle);
}
Gate Gate::uzz(std::uint32_t a, std::uint32_t b, double angle) {
    return make(GateKind::kUzz, a, b, angle);
}
Gate Gate::ux(std::uint32_t q, double angle) { return make(GateKind::kUx, q, q, angle); }

Gate inverse(const Gate &g) {
    Gate r = g;
    if (has_angle(g.kind)) {
        r.angle = normalize_angle(-g.angle);
    }
    return r;
}

bool is_inverse_pair(const Gate &a, const Gate &b) {
    if (a.kind != b.kind || a.qubits != b.qubits) {
        return false;
    }
    if (!has_angle(a.kind)) {
        return true;
    }
    return normalize_angle(-a.angle) == b.angle;
}

Eigen::MatrixXcd gate_matrix(const Gate &g) {
    const KindInfo &k = info(g.kind);
    if (k.angle && !std::isfinite(g.angle)) {
        throw ArgumentError("non-finite angle for " + std::string(k.name));
    }
    const complex_t i1{0.0, 1.0};
    const double phi = g.angle;
    Eigen::MatrixXcd m;
    switch (g.kind) {
        case GateKind::kHadamard: {
            const double s = 1.0 / std::sqrt(2.0);
            m.resize(2, 2);
            m << s, s, s, -s;
            break;
        }
        case GateKind::kRotX:
            m.resize(2, 2);
            m << std::cos(phi / 2), -i1 * std::sin(phi / 2), -i1 * std::sin(phi / 2), std::cos(phi / 2);
            break;
        case GateKind::kRotZ:
            m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 0) = std::exp(-i1 * (phi / 2));
            m(1, 1) = std::exp(i1 * (phi / 2));
            break;
        case GateKind::kPauliX:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateKind::kPauliY:
            m.resize(2, 2);
            m << 0, -i1, i1, 0;
            break;
        case GateKind::kPauliZ:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            break;
        case GateKind::kIdentity:
            m = Eigen::MatrixXcd::Identity(2, 2);
            break;
        case GateKind::kUx:
            m.resize(2, 2);
            m << std::cos(phi), i1 * std::sin(phi), i1 * std::sin(phi), std::cos(phi);
            break;
        case GateKind::kCnot:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(1, 1) = 1;
            m(2, 3) = m(3, 2) = 1;
            break;
        case GateKind::kCz:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateKind::kCPhase:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = std::exp(i1 * phi);
            break;
        case GateKind::kUzz:
            // Z(x)Z eigenvalues: +1 on |00>,|11>, -1 on |01>,|10>.
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(3, 3) = std::exp(i1 * phi);
            m(1, 1) = m(2, 2) = std::exp(-i1 * phi);
            break;
    }
    return m;
}

}  // namespace kzcrit
