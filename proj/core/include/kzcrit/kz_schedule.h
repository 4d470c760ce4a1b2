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

#ifndef KZCRIT_KZ_SCHEDULE_H
#define KZCRIT_KZ_SCHEDULE_H

#include <cstdint>
#include <string>
#include <vector>

#include "kzcrit/circuit.h"

namespace kzcrit {

/// Where inside a time step the piecewise-constant Hamiltonian is evaluated.
enum class StepTime {
    kMidpoint,      // t_k = t_start + (k + 1/2) dt
    kLeftEndpoint,  // t_k = t_start + k dt
};

std::string step_time_name(StepTime s);
/// Accepts "midpoint" and "left".
StepTime step_time_from_name(const std::string &name);

/// Coefficients of the linearly interpolated Ising Hamiltonian
///   H(T, t) = -gx(t) sum_n X_n - gzz(t) sum_n Z_n Z_{n+1}
/// with gx = 1 - t/T and gzz = 1 + t/T (open chain, hbar = 1).
struct HamiltonianParams {
    double gx;
    double gzz;

    static HamiltonianParams at(double drive_time, double t);
};

/// Time-discretized Kibble-Zurek drive: Hadamard preparation at t_start followed by
/// (t_stop - t_start)/dt Suzuki-Trotter steps.
struct KzSchedule {
    std::uint32_t num_qubits = 0;
    double drive_time = 1.0;  // T
    double time_step = 0.1;   // dt
    int order = 2;            // Trotter order, 1 or 2
    double t_start = -1.0;
    double t_stop = 0.0;
    int pad_depth = 0;  // 0 (no padding) or odd d >= 1
    StepTime step_time = StepTime::kMidpoint;

    /// Schedule running from -T to t_stop.
    static KzSchedule make(std::uint32_t num_qubits, double drive_time, double time_step,
                           int order, double t_stop = 0.0);

    /// Every violated invariant, as human-readable messages. Empty when valid.
    std::vector<std::string> violations() const;
    /// Throws ScheduleError listing every violation.
    void validate() const;

    /// Integer number of steps; throws ScheduleError when (t_stop - t_start)/dt is not
    /// an integer within 1e-9.
    std::size_t num_steps() const;
    /// Hamiltonian evaluation time of step k.
    double step_time_of(std::size_t k) const;
};

/// One Hadamard per qubit: the ground state of -sum X.
Circuit initial_state_circuit(std::uint32_t num_qubits);

/// One Trotter step with the Hamiltonian frozen at time t.
///
/// Order 1 applies Ux(dt gx) on every qubit, then Uzz(dt gzz) on the odd bonds
/// (1,2),(3,4),... and then on the even bonds (2,3),(4,5),... (1-based bond labels;
/// qubit indices in the circuit are 0-based). Order 2 applies the symmetric sequence
/// Ux(dt/2) | even Uzz(dt/2) | odd Uzz(dt) | even Uzz(dt/2) | Ux(dt/2).
Circuit trotter_step(const KzSchedule &schedule, double t);

/// Gates in one step: L + (L-1) for order 1, 2L + (L-1) + floor((L-1)/2) for order 2.
std::size_t gates_per_step(std::uint32_t num_qubits, int order);

/// Preparation layer followed by every Trotter step; metadata records the schedule.
/// When schedule.pad_depth >= 3 the steps are depth-padded.
Circuit build_drive(const KzSchedule &schedule);

/// Replaces every step U of a drive built from `schedule` (without padding) by
/// (U^dagger U)^((d-1)/2) U. The noiseless unitary is unchanged; the step gate count
/// grows by d. Throws ArgumentError for even or nonpositive d, or when `drive` does not
/// have the shape of build_drive(schedule).
Circuit pad_depth(const Circuit &drive, const KzSchedule &schedule, int d);

/// 0-based index of the center qubit, (L-1)/2. Throws ArgumentError for even L.
std::uint32_t reference_qubit(std::uint32_t num_qubits);

}  // namespace kzcrit

#endif
