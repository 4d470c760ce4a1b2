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

#ifndef KZCRIT_XI_EXPERIMENT_H
#define KZCRIT_XI_EXPERIMENT_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kzcrit/ensemble.h"
#include "kzcrit/kz_schedule.h"
#include "kzcrit/noise.h"
#include "kzcrit/scaling.h"

namespace kzcrit {

struct XiExperimentOptions {
    // Reference qubit; defaults to the center of the chain.
    std::int64_t reference = -1;
    // Largest separation; defaults to (L - 1) / 2.
    std::uint32_t x_max = 0;
    // Noiseless correlations with |C(x, 0)| below this are excluded.
    double cutoff = 1e-3;
    EnsembleOptions ensemble;
};

/// One row of a ratio table C(x, g) / C(x, 0) for grid value g (a p or a depth d).
struct XiRow {
    double grid_value = 0.0;
    std::uint32_t x = 0;
    double correlation = 0.0;
    double correlation_err = 0.0;
    double reference = 0.0;  // noiseless C(x, 0)
    double ratio = 0.0;
    double ratio_err = 0.0;
    bool excluded = false;
};

struct XiTable {
    std::string grid_name;  // "p" or "d"
    std::vector<double> grid;
    std::vector<XiRow> rows;
    std::uint64_t gate_count = 0;  // base circuit size (before padding) for p-grids

    /// Non-excluded ratio points of one grid value, ready for extract_xi.
    std::vector<RatioPoint> ratios(double grid_value) const;
};

/// Correlation observables C(x) at the reference qubit for x = 1..x_max.
std::vector<Observable> correlation_observables(std::uint32_t num_qubits, std::uint32_t reference,
                                                std::uint32_t x_max);

/// Noise-strength grid at a fixed circuit shape: the drive of `schedule` under each p,
/// with the noise seed and trajectory count of `base`.
XiTable xi_experiment_p(const KzSchedule &schedule, std::span<const double> p_grid, const NoiseSpec &base,
                        const XiExperimentOptions &options = {});

/// Depth grid at fixed p = base.p: the drive padded to each odd depth d.
XiTable xi_experiment_d(const KzSchedule &schedule, std::span<const int> d_grid, const NoiseSpec &base,
                        const XiExperimentOptions &options = {});

}  // namespace kzcrit

#endif
