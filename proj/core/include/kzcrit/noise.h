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

#ifndef KZCRIT_NOISE_H
#define KZCRIT_NOISE_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kzcrit/circuit.h"

namespace kzcrit {

/// Depolarizing noise after every gate: with probability p a uniformly chosen
/// non-identity Pauli (p/3 each for one-qubit gates, p/15 each for two-qubit gates)
/// is applied right after the gate.
struct NoiseSpec {
    double p = 0.0;
    std::uint64_t master_seed = 0;
    std::uint64_t trajectories = 1;  // M
    // Whether the Hadamard preparation layer (metadata "prep_gates") is noisy too.
    bool noisy_preparation = true;

    std::vector<std::string> violations() const;
};

/// Pauli operators inserted after gate `after`. 0 = I, 1 = X, 2 = Y, 3 = Z, one entry per
/// gate target (the second is I for one-qubit gates).
struct PauliInsertion {
    std::size_t after;
    std::array<std::uint8_t, 2> paulis;

    bool operator==(const PauliInsertion &) const = default;
};

/// Key of trajectory `id` under the spec's master seed.
std::uint64_t trajectory_key(const NoiseSpec &spec, std::uint64_t id);

/// Insertions of trajectory `id`, in gate order. Gate i consumes counters 2i and 2i+1
/// of the trajectory stream, so a realization depends only on (master_seed, id, i).
std::vector<PauliInsertion> sample_insertions(const Circuit &circuit, const NoiseSpec &spec,
                                              std::uint64_t id);

/// Gates of `circuit` with the insertions spliced in.
std::vector<Gate> splice_insertions(const Circuit &circuit, const std::vector<PauliInsertion> &insertions);

/// One noisy realization as a circuit; metadata gains noise.p, noise.master_seed and
/// noise.trajectory.
Circuit noisy_instance(const Circuit &circuit, const NoiseSpec &spec, std::uint64_t id);

/// Number of leading gates that never receive noise under `spec`.
std::size_t noiseless_prefix(const Circuit &circuit, const NoiseSpec &spec);

}  // namespace kzcrit

#endif
