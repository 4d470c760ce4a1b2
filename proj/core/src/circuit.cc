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

#include "kzcrit/circuit.h"

#include <algorithm>
#include <string>

#include "kzcrit/error.h"

namespace kzcrit {

Circuit::Circuit(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw ArgumentError("a circuit needs at least one qubit");
    }
}

void Circuit::append(const Gate &g) {
    const bool two = is_two_qubit(g.kind);
    if (g.qubits[0] >= num_qubits_ || (two && g.qubits[1] >= num_qubits_)) {
        throw ArgumentError(std::string(gate_name(g.kind)) + " targets qubit " +
                            std::to_string(std::max(g.qubits[0], two ? g.qubits[1] : 0u)) +
                            " outside a register of " + std::to_string(num_qubits_));
    }
    if (two && g.qubits[0] == g.qubits[1]) {
        throw ArgumentError(std::string(gate_name(g.kind)) + " needs two distinct qubits");
    }
    gates_.push_back(g);
}

void Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw ArgumentError("cannot append a " + std::to_string(other.num_qubits_) +
                            "-qubit circuit to a " + std::to_string(num_qubits_) + "-qubit one");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

std::size_t Circuit::depth() const {
    std::vector<std::size_t> level(num_qubits_, 0);
    std::size_t depth = 0;
    for (const Gate &g : gates_) {
        std::size_t l = level[g.qubits[0]];
        if (is_two_qubit(g.kind)) {
            l = std::max(l, level[g.qubits[1]]);
        }
        ++l;
        level[g.qubits[0]] = l;
        if (is_two_qubit(g.kind)) {
            level[g.qubits[1]] = l;
        }
        depth = std::max(depth, l);
    }
    return depth;
}

void Circuit::set_metadata(const std::string &key, const std::string &value) {
    metadata_[key] = value;
}

std::string Circuit::metadata_value(const std::string &key) const {
    auto it = metadata_.find(key);
    return it == metadata_.end() ? std::string() : it->second;
}

Circuit inverse(const Circuit &c) {
    Circuit r(c.num_qubits());
    r.reserve(c.gate_count());
    auto gates = c.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        r.append(inverse(*it));
    }
    return r;
}

std::vector<Gate> cancel_inverse_pairs(std::span<const Gate> gates) {
    std::vector<Gate> stack;
    stack.reserve(gates.size());
    for (const Gate &g : gates) {
        if (!stack.empty() && is_inverse_pair(stack.back(), g)) {
            stack.pop_back();
        } else {
            stack.push_back(g);
        }
    }
    return stack;
}

Circuit decompose_uzz(double phi, std::uint32_t q0, std::uint32_t q1, std::uint32_t num_qubits) {
    Circuit c(num_qubits);
    c.append(Gate::cnot(q0, q1));
    c.append(Gate::rz(q1, -2.0 * phi));
    c.append(Gate::cnot(q0, q1));
    return c;
}

}  // namespace kzcrit
