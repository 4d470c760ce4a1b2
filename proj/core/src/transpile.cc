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

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

/// Returns k*pi/2 when `angle` is within tolerance of a multiple of pi/2.
std::optional<double> as_quarter_turn(double angle) {
    double k = std::round(angle / (kPi / 2));
    if (std::abs(angle - k * (kPi / 2)) <= kAngleTol * std::max(1.0, std::abs(angle))) {
        return k * (kPi / 2);
    }
    return std::nullopt;
}

/// Rotation by a multiple of 2pi is +-identity, i.e. a global phase.
bool is_trivial_rotation(double angle) {
    double k = std::round(angle / (2 * kPi));
    return std::abs(angle - k * 2 * kPi) <= kAngleTol * std::max(1.0, std::abs(angle));
}

void push_rx(std::vector<Gate> &out, std::uint32_t q, double phi) {
    if (auto quarter = as_quarter_turn(phi)) {
        out.push_back(Gate::rx(q, *quarter));
    } else {
        out.push_back(Gate::h(q));
        out.push_back(Gate::rz(q, phi));
        out.push_back(Gate::h(q));
    }
}

void push_cnot(std::vector<Gate> &out, std::uint32_t c, std::uint32_t t) {
    out.push_back(Gate::h(t));
    out.push_back(Gate::cz(c, t));
    out.push_back(Gate::h(t));
}

void push_uzz(std::vector<Gate> &out, std::uint32_t a, std::uint32_t b, double phi) {
    push_cnot(out, a, b);
    out.push_back(Gate::rz(b, -2.0 * phi));
    push_cnot(out, a, b);
}

/// Expands every gate into {H, RZ, RX(k pi/2), CZ}.
std::vector<Gate> expand(const Circuit &c) {
    std::vector<Gate> out;
    out.reserve(c.gate_count() * 4);
    for (const Gate &g : c.gates()) {
        const auto q0 = g.qubits[0];
        const auto q1 = g.qubits[1];
        switch (g.kind) {
            case GateKind::kHadamard:
            case GateKind::kRotZ:
            case GateKind::kCz:
                out.push_back(g);
                break;
            case GateKind::kRotX:
                push_rx(out, q0, g.angle);
                break;
            case GateKind::kPauliX:
                out.push_back(Gate::rx(q0, kPi));
                break;
            case GateKind::kPauliY:
                // Y = i X Z: apply Z first, then X.
                out.push_back(Gate::rz(q0, kPi));
                out.push_back(Gate::rx(q0, kPi));
                break;
            case GateKind::kPauliZ:
                out.push_back(Gate::rz(q0, kPi));
                break;
            case GateKind::kIdentity:
                break;
            case GateKind::kCnot:
                push_cnot(out, q0, q1);
                break;
            case GateKind::kCPhase:
                out.push_back(Gate::rz(q0, g.angle / 2));
                out.push_back(Gate::rz(q1, g.angle / 2));
                push_uzz(out, q0, q1, g.angle / 4);
                break;
            case GateKind::kUzz:
                push_uzz(out, q0, q1, g.angle);
                break;
            case GateKind::kUx:
                push_rx(out, q0, -2.0 * g.angle);
                break;
            default:
                throw UnsupportedGateError("no native decomposition for " +
                                           std::string(gate_name(g.kind)));
        }
    }
    return out;
}

/// Peephole pass over per-qubit gate streams. Gates on other qubits commute with a
/// single-qubit gate, so "adjacent" means adjacent on that qubit.
class QubitStreams {
   public:
    explicit QubitStreams(std::uint32_t n) : last_(n) {}

    /// Top alive gate on qubit q, or nullptr.
    Gate *top(std::uint32_t q) {
        auto &s = last_[q];
        return s.empty() ? nullptr : &out_[s.back()];
    }

    void pop_single(std::uint32_t q) {
        alive_[last_[q].back()] = false;
        last_[q].pop_back();
    }

    void push(const Gate &g) {
        std::size_t idx = out_.size();
        out_.push_back(g);
        alive_.push_back(true);
        last_[g.qubits[0]].push_back(idx);
        if (is_two_qubit(g.kind)) {
            last_[g.qubits[1]].push_back(idx);
        }
    }

    std::vector<Gate> take() {
        std::vector<Gate> r;
        r.reserve(out_.size());
        for (std::size_t i = 0; i < out_.size(); i++) {
            if (alive_[i]) {
                r.push_back(out_[i]);
            }
        }
        return r;
    }

   private:
    std::vector<Gate> out_;
    std::vector<bool> alive_;
    std::vector<std::vector<std::size_t>> last_;
};

std::vector<Gate> cancel_hadamard_pairs(const std::vector<Gate> &gates, std::uint32_t n) {
    QubitStreams s(n);
    for (const Gate &g : gates) {
        if (g.kind == GateKind::kHadamard) {
            Gate *t = s.top(g.qubits[0]);
            if (t != nullptr && t->kind == GateKind::kHadamard) {
                s.pop_single(g.qubits[0]);
                continue;
            }
        }
        s.push(g);
    }
    return s.take();
}

std::vector<Gate> lower_hadamards(const std::vector<Gate> &gates) {
    std::vector<Gate> out;
    out.reserve(gates.size() * 2);
    for (const Gate &g : gates) {
        if (g.kind == GateKind::kHadamard) {
            out.push_back(Gate::rz(g.qubits[0], kPi / 2));
            out.push_back(Gate::rx(g.qubits[0], kPi / 2));
            out.push_back(Gate::rz(g.qubits[0], kPi / 2));
        } else {
            out.push_back(g);
        }
    }
    return out;
}

std::vector<Gate> merge_rotations(const std::vector<Gate> &gates, std::uint32_t n) {
    QubitStreams s(n);
    for (const Gate &g : gates) {
        const bool rotation = g.kind == GateKind::kRotZ || g.kind == GateKind::kRotX;
        if (!rotation) {
            s.push(g);
            continue;
        }
        const std::uint32_t q = g.qubits[0];
        double angle = g.angle;
        Gate *t = s.top(q);
        if (t != nullptr && t->kind == g.kind) {
            angle = normalize_angle(t->angle + g.angle);
            s.pop_single(q);
        }
        if (g.kind == GateKind::kRotX) {
            if (auto quarter = as_quarter_turn(angle)) {
                angle = *quarter;
            }
        }
        if (!is_trivial_rotation(angle)) {
            s.push(Gate::make(g.kind, q, q, angle));
        }
    }
    return s.take();
}

}  // namespace

Circuit transpile_native(const Circuit &c) {
    const std::uint32_t n = c.num_qubits();
    std::vector<Gate> gates = expand(c);
    gates = cancel_hadamard_pairs(gates, n);
    gates = lower_hadamards(gates);
    gates = merge_rotations(gates, n);
    Circuit out(n);
    out.reserve(gates.size());
    for (const Gate &g : gates) {
        out.append(g);
    }
    for (const auto &[k, v] : c.metadata()) {
        out.set_metadata(k, v);
    }
    out.set_metadata("native", "1");
    return out;
}

bool is_native(const Circuit &c) {
    for (const Gate &g : c.gates()) {
        switch (g.kind) {
            case GateKind::kRotZ:
            case GateKind::kCz:
                break;
            case GateKind::kRotX:
                if (!as_quarter_turn(g.angle)) {
                    return false;
                }
                break;
            default:
                return false;
        }
    }
    return true;
}

}  // namespace kzcrit
