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

#ifndef KZCRIT_RUNNER_H
#define KZCRIT_RUNNER_H

#include <exception>
#include <string>
#include <vector>

#include "kzcrit/config.h"

namespace kzcrit {

enum class Command { kBuild, kRun, kSweep, kCollapse, kScan, kXi };

std::string command_name(Command c);
/// Throws ArgumentError for unknown names.
Command command_from_name(const std::string &name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

/// ConfigError -> 2, NumericError and RankDeficiencyError -> 3, anything else -> 1.
int exit_code_for(const std::exception &e);

struct RunSummary {
    std::string output_dir;
    std::vector<std::string> outputs;  // relative to output_dir, in write order
    std::string manifest_path;
    double wall_seconds = 0.0;
};

/// Runs one command. Outputs are written atomically (temporary file then rename) into
/// config.output_dir, and manifest.json is written last. The manifest embeds the config,
/// so passing it back as the config replays the run; sampled outputs are bit-identical
/// across replays.
///
///   build     circuits/L{L}_T{T}.circuit per point and an index table
///   run       one L: correlations_p{p}.csv per noise level, observables.csv, samples/
///   sweep     like run, across every L
///   collapse  fit at fixed exponents (optionally with xi_tilde): collapse.csv, report.json
///   scan      chi^2/N_dof surface over (nu, eta): surface.csv, report.json
///   xi        ratio tables over the p-grid (or depth grid) and xi fits: ratios.csv, report.json
RunSummary run_command(Command command, const RunConfig &config);

}  // namespace kzcrit

#endif
