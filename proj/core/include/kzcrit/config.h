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

#ifndef KZCRIT_CONFIG_H
#define KZCRIT_CONFIG_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kzcrit/kz_schedule.h"
#include "kzcrit/scaling.h"

namespace kzcrit {

/// Evenly spaced grid given by its end points and size.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 1;

    std::vector<double> values() const { return linspace(min, max, count); }
};

/// Everything a command needs, read from a JSON document with the blocks
/// schedule / noise / measurement / analysis / output (see configs/ for examples).
struct RunConfig {
    // schedule
    std::vector<std::uint32_t> sizes;  // L; several values only for `sweep`
    std::vector<double> drive_times;   // T-list
    double time_step = 0.1;
    // When nonzero, dt = (t_stop + T) / steps for each T instead of time_step.
    std::uint32_t steps = 0;
    int order = 2;
    double t_stop = 0.0;
    int pad_depth = 0;
    StepTime step_time = StepTime::kMidpoint;
    bool transpile = false;

    // noise
    std::vector<double> noise_levels{0.0};
    std::uint64_t trajectories = 1;
    std::uint64_t master_seed = 0;
    bool noisy_preparation = true;

    // measurement; shots = 0 means exact observables from the amplitudes
    std::uint64_t shots = 0;
    std::optional<std::uint32_t> reference;
    std::optional<std::uint32_t> x_max;
    bool energy = true;
    bool entropy = true;

    // analysis
    int taylor_order = 4;
    DecayMode decay = DecayMode::kFree;
    double z = 1.0;
    double nu = 1.0;
    double eta = 0.25;
    GridSpec nu_grid{0.5, 1.5, 101};
    GridSpec eta_grid{0.0, 0.5, 101};
    double bounds_factor = 1.2;
    double min_correlation = 1e-3;
    double collapse_x_min = 1.0;
    double collapse_x_max = 0.0;  // 0 = no upper bound
    double xi_x_min = 1.0;
    double xi_x_max = 0.0;  // 0 = (L - 1) / 2
    // "none", "fit", or a positive number given as xi_tilde_value
    std::string xi_tilde_mode = "none";
    double xi_tilde_value = 0.0;
    double xi_tilde_min = 1.0;
    double xi_tilde_max = 1e6;
    std::vector<int> depth_grid;  // nonempty: `xi` scans depths at p = noise_levels[0]
    std::string input;            // correlation CSV for collapse / scan; empty = simulate

    // output
    std::string output_dir = "out";
    unsigned threads = 1;

    /// Schedule for one (L, T) point.
    KzSchedule schedule(std::uint32_t num_qubits, double drive_time) const;
    /// Every violated precondition across all blocks. Empty when valid.
    std::vector<std::string> violations() const;
};

/// Parses a config document. A run manifest (which embeds its config under "config") is
/// accepted too, so a manifest can be replayed directly. Throws ConfigError listing every
/// problem, including unknown keys and type errors. Relative paths in `input` resolve
/// against base_dir.
RunConfig config_from_json(const std::string &text, const std::string &base_dir = "");

/// Reads and parses a config file.
RunConfig load_config(const std::string &path);

/// Canonical JSON form: same keys in the same order for equal configs.
std::string config_to_json(const RunConfig &config);

/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const RunConfig &config);

}  // namespace kzcrit

#endif
