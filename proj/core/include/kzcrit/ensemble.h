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

#ifndef KZCRIT_ENSEMBLE_H
#define KZCRIT_ENSEMBLE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kzcrit/circuit.h"
#include "kzcrit/noise.h"
#include "kzcrit/sampling.h"
#include "kzcrit/state_vector.h"

namespace kzcrit {

/// A named real functional of the final state.
struct Observable {
    std::string name;
    std::function<double(const StateVector &)> evaluate;
};

/// Values of every observable for one noise realization, tagged for replay.
struct TrajectoryResult {
    std::uint64_t master_seed = 0;
    std::uint64_t id = 0;
    std::size_t insertions = 0;
    std::vector<double> values;
};

struct EnsembleOptions {
    unsigned threads = 1;  // 0 = hardware concurrency
    // Memory spent on noiseless checkpoints of the base circuit.
    std::size_t checkpoint_bytes = std::size_t{256} << 20;
    // Collapse adjacent inverse pairs in the noisy suffix before simulating it.
    bool cancel_pairs = true;
    bool keep_trajectories = false;
};

struct EnsembleResult {
    std::vector<std::string> names;
    std::vector<double> mean;
    std::vector<double> std_error;  // sample std / sqrt(M); 0 when M = 1
    std::vector<double> noiseless;
    std::uint64_t trajectories = 0;
    std::uint64_t clean_trajectories = 0;  // realizations without any insertion
    double mean_insertions = 0.0;
    std::vector<TrajectoryResult> per_trajectory;  // filled when keep_trajectories

    /// Index of the named observable; throws ArgumentError if absent.
    std::size_t index_of(const std::string &name) const;
};

/// Simulates noise realizations of one base circuit.
///
/// A realization agrees with the noiseless run up to its first insertion, so it is
/// resumed from the nearest noiseless checkpoint at or before that point. Realizations
/// without insertions return the cached noiseless final state. The results equal a
/// plain gate-by-gate simulation of noisy_instance() up to floating-point reassociation.
class TrajectoryEngine {
   public:
    TrajectoryEngine(Circuit circuit, NoiseSpec spec, std::size_t checkpoint_bytes = std::size_t{256} << 20,
                     bool cancel_pairs = true);

    const Circuit &circuit() const { return circuit_; }
    const NoiseSpec &spec() const { return spec_; }
    const StateVector &noiseless_state() const { return noiseless_; }
    std::size_t num_checkpoints() const { return checkpoints_.size(); }

    /// Final state of realization `id`; the number of inserted Pauli events is written
    /// to `insertions` when given.
    StateVector final_state(std::uint64_t id, std::size_t *insertions = nullptr) const;

   private:
    Circuit circuit_;
    NoiseSpec spec_;
    bool cancel_pairs_;
    // (number of gates applied, state) in increasing order; the first entry is |0...0>.
    std::vector<std::pair<std::size_t, StateVector>> checkpoints_;
    StateVector noiseless_;
};

/// Mean and standard error of every observable over spec.trajectories realizations.
///
/// Means are accumulated as offsets from the noiseless value and reduced in trajectory
/// order, so the result does not depend on the worker count and p = 0 reproduces the
/// noiseless values with zero error.
EnsembleResult run_ensemble(const Circuit &circuit, const NoiseSpec &spec, const std::vector<Observable> &observables,
                            const EnsembleOptions &options = {});

/// `shots_per_trajectory` measurement shots from each realization, merged in order.
SampleSet run_sampled_ensemble(const Circuit &circuit, const NoiseSpec &spec, std::uint64_t shots_per_trajectory,
                               const EnsembleOptions &options = {});

}  // namespace kzcrit

#endif
