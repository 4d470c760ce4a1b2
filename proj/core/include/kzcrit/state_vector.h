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

#ifndef KZCRIT_STATE_VECTOR_H
#define KZCRIT_STATE_VECTOR_H

#include <cstdint>
#include <span>
#include <vector>

#include "kzcrit/circuit.h"
#include "kzcrit/gate.h"

namespace kzcrit {

/// Dense pure state of L qubits.
///
/// Basis ordering is little-endian: qubit 0 is the least significant bit of the basis
/// index, so amplitude i belongs to the bitstring whose qubit q reads (i >> q) & 1.
class StateVector {
   public:
    static constexpr std::uint32_t kDefaultMaxQubits = 26;

    /// |0...0> on num_qubits qubits. Throws ArgumentError above max_qubits.
    explicit StateVector(std::uint32_t num_qubits, std::uint32_t max_qubits = kDefaultMaxQubits);

    static StateVector basis_state(std::uint32_t num_qubits, std::uint64_t index);
    /// Takes ownership of 2^L amplitudes; they are not renormalized.
    static StateVector from_amplitudes(std::uint32_t num_qubits, std::vector<complex_t> amplitudes);

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::uint64_t dimension() const { return amps_.size(); }
    std::span<const complex_t> amplitudes() const { return amps_; }
    complex_t amplitude(std::uint64_t i) const { return amps_[i]; }

    /// Applies one gate. Throws ArgumentError for out-of-range targets.
    void apply(const Gate &g);
    /// Applies every gate of c in order. c must act on the same number of qubits.
    void apply(const Circuit &c);
    /// Like gate-by-gate application, with commuting runs fused into fewer passes.
    void apply(std::span<const Gate> gates);

    double norm_squared() const;
    /// |amplitude|^2 for every basis state.
    std::vector<double> probabilities() const;

   private:
    StateVector() = default;

    std::uint32_t num_qubits_ = 0;
    std::vector<complex_t> amps_;
};

}  // namespace kzcrit

#endif
