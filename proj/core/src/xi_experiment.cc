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

#include "kzcrit/xi_experiment.h"

#include <cmath>
#include <string>

#include "kzcrit/error.h"
#include "kzcrit/observables.h"

namespace kzcrit {

namespace {

struct Resolved {
    std::uint32_t r;
    std::uint32_t x_max;
};

Resolved resolve(const KzSchedule &schedule, const XiExperimentOptions &options) {
    Resolved out{};
    out.r = options.reference < 0 ? reference_qubit(schedule.num_qubits)
                                  : static_cast<std::uint32_t>(options.reference);
    out.x_max = options.x_max != 0 ? options.x_max : (schedule.num_qubits - 1) / 2;
    if (out.r >= schedule.num_qubits || out.x_max < 1) {
        throw ArgumentError("xi experiment: bad reference qubit or separation range");
    }
    return out;
}

void append_rows(XiTable &table, double g, const EnsembleResult &res, const std::vector<double> &c0, double cutoff) {
    for (std::size_t k = 0; k < c0.size(); k++) {
        XiRow row;
        row.grid_value = g;
        row.x = static_cast<std::uint32_t>(k + 1);
        row.correlation = res.mean[k];
        row.correlation_err = res.std_error[k];
        row.reference = c0[k];
        row.excluded = !(std::abs(c0[k]) >= cutoff);
        if (!row.excluded) {
            row.ratio = res.mean[k] / c0[k];
            row.ratio_err = res.std_error[k] / std::abs(c0[k]);
        }
        table.rows.push_back(row);
    }
}

}  // namespace

std::vector<RatioPoint> XiTable::ratios(double grid_value) const {
    std::vector<RatioPoint> out;
    for (const auto &row : rows) {
        if (row.grid_value == grid_value && !row.excluded) {
            out.push_back({static_cast<double>(row.x), row.ratio, row.ratio_err});
        }
    }
    return out;
}

std::vector<Observable> correlation_observables(std::uint32_t num_qubits, std::uint32_t reference,
                                                std::uint32_t x_max) {
    std::vector<Observable> obs;
    for (std::uint32_t x = 1; x <= x_max; x++) {
        if (x > reference && std::uint64_t{reference} + x >= num_qubits) {
            throw ArgumentError("separation " + std::to_string(x) + " leaves the chain on both sides");
        }
        obs.push_back({"C" + std::to_string(x), [reference, x](const StateVector &s) {
                           return correlation_exact(s, reference, x).value;
                       }});
    }
    return obs;
}

XiTable xi_experiment_p(const KzSchedule &schedule, std::span<const double> p_grid, const NoiseSpec &base,
                        const XiExperimentOptions &options) {
    const auto [r, x_max] = resolve(schedule, options);
    const Circuit drive = build_drive(schedule);
    const auto obs = correlation_observables(schedule.num_qubits, r, x_max);

    XiTable table;
    table.grid_name = "p";
    table.gate_count = drive.gate_count();
    std::vector<double> c0;
    for (const double p : p_grid) {
        NoiseSpec spec = base;
        spec.p = p;
        const EnsembleResult res = run_ensemble(drive, spec, obs, options.ensemble);
        if (c0.empty()) {
            c0 = res.noiseless;
        }
        table.grid.push_back(p);
        append_rows(table, p, res, c0, options.cutoff);
    }
    return table;
}

XiTable xi_experiment_d(const KzSchedule &schedule, std::span<const int> d_grid, const NoiseSpec &base,
                        const XiExperimentOptions &options) {
    const auto [r, x_max] = resolve(schedule, options);
    KzSchedule unpadded = schedule;
    unpadded.pad_depth = 0;
    const Circuit drive = build_drive(unpadded);
    const auto obs = correlation_observables(schedule.num_qubits, r, x_max);

    // The d = 0 reference is the noiseless drive.
    std::vector<double> c0;
    {
        StateVector s(schedule.num_qubits);
        s.apply(drive);
        for (const auto &o : obs) {
            c0.push_back(o.evaluate(s));
        }
    }
    XiTable table;
    table.grid_name = "d";
    table.gate_count = drive.gate_count();
    for (const int d : d_grid) {
        const Circuit padded = pad_depth(drive, unpadded, d);
        const EnsembleResult res = run_ensemble(padded, base, obs, options.ensemble);
        table.grid.push_back(d);
        append_rows(table, d, res, c0, options.cutoff);
    }
    return table;
}

}  // namespace kzcrit
