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

#include "kzcrit/ensemble.h"

#include <algorithm>
#include <cmath>

#include "kzcrit/error.h"
#include "kzcrit/parallel.h"
#include "kzcrit/rng.h"

namespace kzcrit {

std::size_t EnsembleResult::index_of(const std::string &name) const {
    for (std::size_t i = 0; i < names.size(); i++) {
        if (names[i] == name) {
            return i;
        }
    }
    throw ArgumentError("no observable named '" + name + "'");
}

TrajectoryEngine::TrajectoryEngine(Circuit circuit, NoiseSpec spec, std::size_t checkpoint_bytes, bool cancel_pairs)
    : circuit_(std::move(circuit)),
      spec_(spec),
      cancel_pairs_(cancel_pairs),
      noiseless_(circuit_.num_qubits()) {
    const auto gates = circuit_.gates();
    const std::size_t n = gates.size();
    const std::size_t state_bytes = sizeof(complex_t) << circuit_.num_qubits();
    const std::size_t slots = std::clamp<std::size_t>(checkpoint_bytes / state_bytes, 1, n + 1);
    const std::size_t stride = (n + slots) / slots;  // ceil((n + 1) / slots)

    StateVector s(circuit_.num_qubits());
    std::size_t done = 0;
    checkpoints_.emplace_back(0, s);
    for (std::size_t next = stride; next < n && checkpoints_.size() < slots; next += stride) {
        s.apply(gates.subspan(done, next - done));
        done = next;
        checkpoints_.emplace_back(done, s);
    }
    s.apply(gates.subspan(done));
    noiseless_ = std::move(s);
}

StateVector TrajectoryEngine::final_state(std::uint64_t id, std::size_t *insertions) const {
    const auto noise = sample_insertions(circuit_, spec_, id);
    if (insertions != nullptr) {
        *insertions = noise.size();
    }
    if (noise.empty()) {
        return noiseless_;
    }
    const auto gates = circuit_.gates();
    const std::size_t first = noise.front().after;

    // Noiseless through gate `first` inclusive.
    auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), first + 1,
                               [](std::size_t v, const auto &cp) { return v < cp.first; });
    --it;
    StateVector state = it->second;
    state.apply(gates.subspan(it->first, first + 1 - it->first));

    std::vector<Gate> suffix;
    suffix.reserve(gates.size() - first + 2 * noise.size());
    std::size_t k = 0;
    for (std::size_t i = first; i < gates.size(); i++) {
        if (i != first) {
            suffix.push_back(gates[i]);
        }
        for (; k < noise.size() && noise[k].after == i; k++) {
            const int arity = is_two_qubit(gates[i].kind) ? 2 : 1;
            for (int a = 0; a < arity; a++) {
                const std::uint8_t pk = noise[k].paulis[a];
                const std::uint32_t q = gates[i].qubits[a];
                if (pk == 1) {
                    suffix.push_back(Gate::x(q));
                } else if (pk == 2) {
                    suffix.push_back(Gate::y(q));
                } else if (pk == 3) {
                    suffix.push_back(Gate::z(q));
                }
            }
        }
    }
    if (cancel_pairs_) {
        suffix = cancel_inverse_pairs(suffix);
    }
    state.apply(std::span<const Gate>(suffix));
    return state;
}

EnsembleResult run_ensemble(const Circuit &circuit, const NoiseSpec &spec, const std::vector<Observable> &observables,
                            const EnsembleOptions &options) {
    if (auto v = spec.violations(); !v.empty()) {
        throw ArgumentError(v.front());
    }
    const TrajectoryEngine engine(circuit, spec, options.checkpoint_bytes, options.cancel_pairs);
    const std::size_t K = observables.size();
    const std::uint64_t M = spec.trajectories;

    EnsembleResult r;
    r.trajectories = M;
    for (const auto &o : observables) {
        r.names.push_back(o.name);
        r.noiseless.push_back(o.evaluate(engine.noiseless_state()));
    }

    std::vector<double> values(M * K);
    std::vector<std::size_t> counts(M);
    parallel_for(M, options.threads, [&](std::size_t id, unsigned) {
        std::size_t n = 0;
        const StateVector s = engine.final_state(id, &n);
        counts[id] = n;
        for (std::size_t j = 0; j < K; j++) {
            values[id * K + j] = n == 0 ? r.noiseless[j] : observables[j].evaluate(s);
        }
    });

    r.mean.assign(K, 0.0);
    r.std_error.assign(K, 0.0);
    std::vector<double> sum(K, 0.0);
    std::vector<double> sum_sq(K, 0.0);
    double total_insertions = 0;
    for (std::uint64_t id = 0; id < M; id++) {
        total_insertions += static_cast<double>(counts[id]);
        if (counts[id] == 0) {
            r.clean_trajectories++;
        }
        for (std::size_t j = 0; j < K; j++) {
            const double d = values[id * K + j] - r.noiseless[j];
            sum[j] += d;
            sum_sq[j] += d * d;
        }
    }
    const double m = static_cast<double>(M);
    for (std::size_t j = 0; j < K; j++) {
        const double shift = sum[j] / m;
        r.mean[j] = r.noiseless[j] + shift;
        if (M > 1) {
            const double var = (sum_sq[j] - m * shift * shift) / (m - 1);
            r.std_error[j] = std::sqrt(std::max(var, 0.0) / m);
        }
    }
    r.mean_insertions = total_insertions / m;
    if (options.keep_trajectories) {
        r.per_trajectory.resize(M);
        for (std::uint64_t id = 0; id < M; id++) {
            auto &t = r.per_trajectory[id];
            t.master_seed = spec.master_seed;
            t.id = id;
            t.insertions = counts[id];
            t.values.assign(values.begin() + static_cast<std::ptrdiff_t>(id * K),
                            values.begin() + static_cast<std::ptrdiff_t>((id + 1) * K));
        }
    }
    return r;
}

SampleSet run_sampled_ensemble(const Circuit &circuit, const NoiseSpec &spec, std::uint64_t shots_per_trajectory,
                               const EnsembleOptions &options) {
    if (auto v = spec.violations(); !v.empty()) {
        throw ArgumentError(v.front());
    }
    const TrajectoryEngine engine(circuit, spec, options.checkpoint_bytes, options.cancel_pairs);
    std::vector<SampleSet> parts(spec.trajectories);
    parallel_for(spec.trajectories, options.threads, [&](std::size_t id, unsigned) {
        const StateVector s = engine.final_state(id);
        // Measurement stream is separate from the noise stream of the same trajectory.
        parts[id] = sample(s, shots_per_trajectory, CounterRng::derive(trajectory_key(spec, id), 0x5a4d'504cULL));
    });
    SampleSet out;
    out.num_qubits = circuit.num_qubits();
    out.seed = spec.master_seed;
    for (const auto &part : parts) {
        out.merge(part);
    }
    out.provenance = circuit.metadata();
    out.provenance["noise.master_seed"] = std::to_string(spec.master_seed);
    out.provenance["noise.trajectories"] = std::to_string(spec.trajectories);
    out.provenance["shots_per_trajectory"] = std::to_string(shots_per_trajectory);
    return out;
}

}  // namespace kzcrit
