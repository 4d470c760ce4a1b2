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

#ifndef KZCRIT_TRANSPILE_H
#define KZCRIT_TRANSPILE_H

#include "kzcrit/circuit.h"

namespace kzcrit {

/// Lowers a circuit to the native set {RotZ(any), RotX(k pi/2), CZ}.
///
/// Lowering rules: H = RotZ(pi/2) RotX(pi/2) RotZ(pi/2); RotX(phi) = H RotZ(phi) H for
/// angles that are not multiples of pi/2; CNOT(c,t) = H(t) CZ(c,t) H(t); Uzz goes through
/// its CNOT sandwich; Ux(phi) = RotX(-2 phi). Adjacent H pairs on a qubit cancel before H
/// is lowered, then adjacent RotZ (and RotX) rotations on a qubit merge and rotations by
/// multiples of 2pi are dropped. The result equals the input up to a global phase.
///
/// Already-native circuits only go through the merge pass, so the function is idempotent.
Circuit transpile_native(const Circuit &c);

/// True when every gate is RotZ, RotX by a multiple of pi/2, or CZ.
bool is_native(const Circuit &c);

}  // namespace kzcrit

#endif
