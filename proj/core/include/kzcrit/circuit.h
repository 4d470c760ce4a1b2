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

#ifndef KZCRIT_CIRCUIT_H
#define KZCRIT_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kzcrit/gate.h"

namespace kzcrit {

/// Ordered gate list over a fixed number of qubits, plus a free-form provenance
/// record (schedule parameters, seeds, realization ids).
///
/// Gates are validated against the register size when appended. Circuits are
/// plain values; once built they are only read, and may be shared across threads.
class Circuit {
   public:
    using Metadata = std::map<std::string, std::string>;

    explicit Circuit(std::uint32_t num_qubits);

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::span<const Gate> gates() const { return gates_; }
    std::size_t gate_count() const { return gates_.size(); }
    const Gate &operator[](std::size_t i) const { return gates_[i]; }
    bool empty() const { return gates_.empty(); }

    /// Number of layers when every gate is scheduled as early as its qubits allow.
    std::size_t depth() const;

    /// Throws ArgumentError if a target is out of range.
    void append(const Gate &g);
    /// Appends every gate of `other`, which must act on a register of the same size.
    void append(const Circuit &other);
    void reserve(std::size_t n) { gates_.reserve(n); }

    const Metadata &metadata() const { return metadata_; }
    void set_metadata(const std::string &key, const std::string &value);
    /// Empty string when the key is absent.
    std::string metadata_value(const std::string &key) const;

    bool operator==(const Circuit &other) const = default;

   private:
    std::uint32_t num_qubits_;
    std::vector<Gate> gates_;
    Metadata metadata_;
};

/// Reversed circuit of inverted gates, so that inverse(c) applied after c is the identity.
Circuit inverse(const Circuit &c);

/// Removes adjacent exact inverse pairs (g followed by inverse(g) on the same targets)
/// with a stack, so nested patterns such as U U^dagger collapse completely.
std::vector<Gate> cancel_inverse_pairs(std::span<const Gate> gates);

/// [CNOT(q0,q1), RotZ(-2 phi) on q1, CNOT(q0,q1)], equal to exp(i phi Z Z) up to a
/// global phase.
Circuit decompose_uzz(double phi, std::uint32_t q0, std::uint32_t q1, std::uint32_t num_qubits);

}  // namespace kzcrit

#endif
