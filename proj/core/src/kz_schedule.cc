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

#include "kzcrit/kz_schedule.h"

#include <cmath>
#include <sstream>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void append_bond_layer(Circuit &c, std::uint32_t first, double angle) {
    for (std::uint32_t q = first; q + 1 < c.num_qubits(); q += 2) {
        c.append(Gate::uzz(q, q + 1, angle));
    }
}

void append_field_layer(Circuit &c, double angle) {
    for (std::uint32_t q = 0; q < c.num_qubits(); q++) {
        c.append(Gate::ux(q, angle));
    }
}

}  // namespace

std::string step_time_name(StepTime s) {
    return s == StepTime::kMidpoint ? "midpoint" : "left";
}

StepTime step_time_from_name(const std::string &name) {
    if (name == "midpoint") {
        return StepTime::kMidpoint;
    }
    if (name == "left") {
        return StepTime::kLeftEndpoint;
    }
    throw ArgumentError("unknown step time convention '" + name + "' (expected midpoint or left)");
}

HamiltonianParams HamiltonianParams::at(double drive_time, double t) {
    return {1.0 - t / drive_time, 1.0 + t / drive_time};
}

KzSchedule KzSchedule::make(std::uint32_t num_qubits, double drive_time, double time_step,
                            int order, double t_stop) {
    KzSchedule s;
    s.num_qubits = num_qubits;
    s.drive_time = drive_time;
    s.time_step = time_step;
    s.order = order;
    s.t_start = -drive_time;
    s.t_stop = t_stop;
    return s;
}

std::vector<std::string> KzSchedule::violations() const {
    std::vector<std::string> v;
    if (num_qubits < 2) {
        v.push_back("L must be >= 2 (got " + std::to_string(num_qubits) + ")");
    }
    if (!(drive_time > 0) || !std::isfinite(drive_time)) {
        v.push_back("T must be positive and finite (got " + fmt(drive_time) + ")");
    }
    if (!(time_step > 0) || !(time_step <= drive_time)) {
        v.push_back("dt must satisfy 0 < dt <= T (got dt=" + fmt(time_step) + ", T=" +
                    fmt(drive_time) + ")");
    }
    if (order != 1 && order != 2) {
        v.push_back("Trotter order must be 1 or 2 (got " + std::to_string(order) + ")");
    }
    if (!(t_stop <= drive_time)) {
        v.push_back("t_stop must be <= T (got " + fmt(t_stop) + ")");
    }
    if (!(t_stop >= t_start)) {
        v.push_back("t_stop must be >= t_start (got t_start=" + fmt(t_start) + ", t_stop=" +
                    fmt(t_stop) + ")");
    }
    if (time_step > 0 && std::isfinite(t_stop - t_start)) {
        double steps = (t_stop - t_start) / time_step;
        if (std::abs(steps - std::round(steps)) > 1e-9) {
            v.push_back("(t_stop - t_start)/dt = " + fmt(steps) + " is not an integer");
        }
    }
    if (pad_depth < 0 || (pad_depth > 0 && pad_depth % 2 == 0)) {
        v.push_back("pad depth must be 0 or an odd positive integer (got " +
                    std::to_string(pad_depth) + ")");
    }
    return v;
}

void KzSchedule::validate() const {
    auto v = violations();
    if (v.empty()) {
        return;
    }
    std::string msg = "invalid schedule:";
    for (const auto &s : v) {
        msg += "\n  - " + s;
    }
    throw ScheduleError(msg);
}

std::size_t KzSchedule::num_steps() const {
    double steps = (t_stop - t_start) / time_step;
    if (!std::isfinite(steps) || steps < -1e-9 || std::abs(steps - std::round(steps)) > 1e-9) {
        throw ScheduleError("(t_stop - t_start)/dt = " + fmt(steps) + " is not a whole number of steps");
    }
    return static_cast<std::size_t>(std::llround(steps));
}

double KzSchedule::step_time_of(std::size_t k) const {
    double offset = step_time == StepTime::kMidpoint ? 0.5 : 0.0;
    return t_start + (static_cast<double>(k) + offset) * time_step;
}

Circuit initial_state_circuit(std::uint32_t num_qubits) {
    Circuit c(num_qubits);
    for (std::uint32_t q = 0; q < num_qubits; q++) {
        c.append(Gate::h(q));
    }
    return c;
}

std::size_t gates_per_step(std::uint32_t num_qubits, int order) {
    const std::size_t n = num_qubits;
    const std::size_t odd = n / 2;          // bonds (1,2),(3,4),...
    const std::size_t even = (n - 1) / 2;   // bonds (2,3),(4,5),...
    return order == 1 ? n + odd + even : 2 * n + odd + 2 * even;
}

Circuit trotter_step(const KzSchedule &schedule, double t) {
    const auto g = HamiltonianParams::at(schedule.drive_time, t);
    const double dt = schedule.time_step;
    Circuit c(schedule.num_qubits);
    c.reserve(gates_per_step(schedule.num_qubits, schedule.order));
    if (schedule.order == 1) {
        append_field_layer(c, dt * g.gx);
        append_bond_layer(c, 0, dt * g.gzz);
        append_bond_layer(c, 1, dt * g.gzz);
    } else if (schedule.order == 2) {
        append_field_layer(c, 0.5 * dt * g.gx);
        append_bond_layer(c, 1, 0.5 * dt * g.gzz);
        append_bond_layer(c, 0, dt * g.gzz);
        append_bond_layer(c, 1, 0.5 * dt * g.gzz);
        append_field_layer(c, 0.5 * dt * g.gx);
    } else {
        throw ScheduleError("Trotter order must be 1 or 2 (got " + std::to_string(schedule.order) + ")");
    }
    return c;
}

namespace {

void record_schedule(Circuit &c, const KzSchedule &s, std::size_t steps) {
    c.set_metadata("schedule.L", std::to_string(s.num_qubits));
    c.set_metadata("schedule.T", fmt(s.drive_time));
    c.set_metadata("schedule.dt", fmt(s.time_step));
    c.set_metadata("schedule.order", std::to_string(s.order));
    c.set_metadata("schedule.t_start", fmt(s.t_start));
    c.set_metadata("schedule.t_stop", fmt(s.t_stop));
    c.set_metadata("schedule.pad_depth", std::to_string(s.pad_depth));
    c.set_metadata("schedule.step_time", step_time_name(s.step_time));
    c.set_metadata("schedule.steps", std::to_string(steps));
    c.set_metadata("prep_gates", std::to_string(s.num_qubits));
}

}  // namespace

Circuit build_drive(const KzSchedule &schedule) {
    schedule.validate();
    const std::size_t steps = schedule.num_steps();
    Circuit c = initial_state_circuit(schedule.num_qubits);
    c.reserve(schedule.num_qubits + steps * gates_per_step(schedule.num_qubits, schedule.order));
    for (std::size_t k = 0; k < steps; k++) {
        c.append(trotter_step(schedule, schedule.step_time_of(k)));
    }
    record_schedule(c, schedule, steps);
    if (schedule.pad_depth >= 3) {
        KzSchedule unpadded = schedule;
        unpadded.pad_depth = 0;
        return pad_depth(c, unpadded, schedule.pad_depth);
    }
    return c;
}

Circuit pad_depth(const Circuit &drive, const KzSchedule &schedule, int d) {
    if (d < 1 || d % 2 == 0) {
        throw ArgumentError("pad depth must be an odd positive integer (got " + std::to_string(d) + ")");
    }
    const std::uint32_t n = schedule.num_qubits;
    const std::size_t steps = schedule.num_steps();
    const std::size_t per_step = gates_per_step(n, schedule.order);
    if (drive.num_qubits() != n || drive.gate_count() != n + steps * per_step) {
        throw ArgumentError("circuit does not have the shape of an unpadded drive for this schedule");
    }
    auto gates = drive.gates();
    Circuit out(n);
    out.reserve(n + steps * per_step * static_cast<std::size_t>(d));
    for (std::uint32_t q = 0; q < n; q++) {
        out.append(gates[q]);
    }
    for (std::size_t k = 0; k < steps; k++) {
        Circuit step(n);
        for (std::size_t i = 0; i < per_step; i++) {
            step.append(gates[n + k * per_step + i]);
        }
        const Circuit back = inverse(step);
        // (U^dagger U)^m U acts right to left: U first, then m rounds of U, U^dagger.
        out.append(step);
        for (int rep = 0; rep < (d - 1) / 2; rep++) {
            out.append(step);
            out.append(back);
        }
    }
    for (const auto &[key, value] : drive.metadata()) {
        out.set_metadata(key, value);
    }
    out.set_metadata("schedule.pad_depth", std::to_string(d));
    return out;
}

std::uint32_t reference_qubit(std::uint32_t num_qubits) {
    if (num_qubits % 2 == 0) {
        throw ArgumentError("the reference qubit needs an odd chain length (got L=" +
                            std::to_string(num_qubits) + ")");
    }
    return (num_qubits - 1) / 2;
}

}  // namespace kzcrit
