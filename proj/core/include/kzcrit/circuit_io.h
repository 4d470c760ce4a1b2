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

#ifndef KZCRIT_CIRCUIT_IO_H
#define KZCRIT_CIRCUIT_IO_H

#include <cstdint>
#include <string>
#include <string_view>

#include "kzcrit/circuit.h"

namespace kzcrit {

// Line-oriented circuit text format:
//
//   # num_qubits=7
//   # schedule.T=1
//   H 0
//   UX 0 0.875
//   CNOT 0 1
//   UZZ 0 1 0.125
//
// One gate per line as `KIND q0 [q1] [angle]`, angles as decimal radians printed with
// 17 significant digits. `#` lines hold metadata `key=value` pairs; num_qubits is required.

std::string circuit_to_text(const Circuit &c);
/// Throws UnsupportedGateError for unknown kinds and ArgumentError for malformed lines.
Circuit circuit_from_text(std::string_view text);

/// FNV-1a 64-bit hash of the register size and gate lines; metadata is excluded.
std::uint64_t circuit_hash(const Circuit &c);

}  // namespace kzcrit

#endif
