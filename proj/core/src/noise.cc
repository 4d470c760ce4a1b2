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

#include <algorithm>
#include <cstdio>
#include <string>

#include "kzcrit/error.h"
#include "kzcrit/rng.h"

namespace kzcrit {

namespace {

Gate pauli_gate(std::uint8_t k, std::uint32_t q) {
    switch (k) {
        case 1:
            return Gate::x(q);
        case 2:
            return Gate::y(q);
        default:
            return Gate::z(q);
    }
}

}  // namespace

std::vector<std::string> NoiseSpec::violations() const {
    std::vector<std::string> v;
    if (!(p >= 0.0 && p <= 1.0)) {
        v.push_back("noise probability p must lie in [0, 1] (got " + std::to_string(p) + ")");
    }
    if (trajectories < 1) {
        v.push_back("trajectory count M must be at least 1");
    }
    return v;
}

std::uint64_t trajectory_key(const NoiseSpec &spec, std::uint64_t id) {
    return CounterRng::derive(spec.master_seed, id);
}

std::size_t noiseless_prefix(const Circuit &circuit, const NoiseSpec &spec) {
    if (spec.noisy_preparation) {
        return 0;
    }
    const std::string prep = circuit.metadata_value("prep_gates");
    if (prep.empty()) {
        return 0;
    }
    return std::min<std::size_t>(std::stoull(prep), circuit.gate_count());
}

std::vector<PauliInsertion> sample_insertions(const Circuit &circuit, const NoiseSpec &spec,
                                              std::uint64_t id) {
    std::vector<PauliInsertion> out;
    if (spec.p <= 0.0) {
        return out;
    }
    const CounterRng rng(trajectory_key(spec, id));
    const auto gates = circuit.gates();
    for (std::size_t i = noiseless_prefix(circuit, spec); i < gates.size(); i++) {
        if (rng.uniform(2 * i) >= spec.p) {
            continue;
        }
        const std::uint64_t b = rng.bits(2 * i + 1);
        if (is_two_qubit(gates[i].kind)) {
            // 15 non-identity pairs: k = 4a + b with k in 1..15.
            const auto k = static_cast<std::uint8_t>(1 + b % 15);
            out.push_back({i, {static_cast<std::uint8_t>(k >> 2), static_cast<std::uint8_t>(k & 3)}});
        } else {
            out.push_back({i, {static_cast<std::uint8_t>(1 + b % 3), 0}});
        }
    }
    return out;
}

std::vector<Gate> splice_insertions(const Circuit &circuit, const std::vector<PauliInsertion> &insertions) {
    const auto gates = circuit.gates();
    std::vector<Gate> out;
    out.reserve(gates.size() + 2 * insertions.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < gates.size(); i++) {
        out.push_back(gates[i]);
        while (next < insertions.size() && insertions[next].after == i) {
            const auto &ins = insertions[next];
            const int arity = is_two_qubit(gates[i].kind) ? 2 : 1;
            for (int k = 0; k < arity; k++) {
                if (ins.paulis[k] != 0) {
                    out.push_back(pauli_gate(ins.paulis[k], gates[i].qubits[k]));
                }
            }
            next++;
        }
    }
    return out;
}

Circuit noisy_instance(const Circuit &circuit, const NoiseSpec &spec, std::uint64_t id) {
    Circuit out(circuit.num_qubits());
    for (const auto &g : splice_insertions(circuit, sample_insertions(circuit, spec, id))) {
        out.append(g);
    }
    for (const auto &[k, v] : circuit.metadata()) {
        out.set_metadata(k, v);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", spec.p);
    out.set_metadata("noise.p", buf);
    out.set_metadata("noise.master_seed", std::to_string(spec.master_seed));
    out.set_metadata("noise.trajectory", std::to_string(id));
    return out;
}

}  // namespace kzcrit
