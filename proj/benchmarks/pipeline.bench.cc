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

#include "benchmark/benchmark.h"

#include "kzcrit/ensemble.h"
#include "kzcrit/kz_schedule.h"
#include "kzcrit/sampling.h"
#include "kzcrit/scaling.h"
#include "kzcrit/xi_experiment.h"

using namespace kzcrit;

// Noisy trajectories of the L = 17, T = 4 drive, resumed from noiseless checkpoints.
static void BM_trajectories(benchmark::State &state) {
    const double p = static_cast<double>(state.range(0)) * 1e-4;
    const Circuit c = build_drive(KzSchedule::make(17, 4.0, 0.1, 2));
    const auto obs = correlation_observables(17, 8, 6);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const EnsembleResult r = run_ensemble(c, {p, seed++, 16, true}, obs);
        benchmark::DoNotOptimize(r.mean.data());
    }
    state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_trajectories)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_sampling(benchmark::State &state) {
    StateVector s(13);
    s.apply(build_drive(KzSchedule::make(13, 2.0, 0.1, 2)));
    const auto shots = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const SampleSet set = sample(s, shots, seed++);
        benchmark::DoNotOptimize(set.counts.size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shots));
}
BENCHMARK(BM_sampling)->Arg(32768)->Arg(131072);

// One scaling fit with free decay on a small synthetic collapse.
static void BM_scaling_fit(benchmark::State &state) {
    std::vector<ScaledPoint> pts;
    for (int i = 0; i < 60; i++) {
        const double X = 0.05 * i;
        pts.push_back({X, (1.0 - 0.3 * X) * std::exp(-0.5 * X), 0.01});
    }
    for (auto _ : state) {
        const ScalingFit f = fit_scaling_function(pts);
        benchmark::DoNotOptimize(f.chi2);
    }
}
BENCHMARK(BM_scaling_fit);

BENCHMARK_MAIN();
