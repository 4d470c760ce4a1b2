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

#include <vector>

#include "kzcrit/kz_schedule.h"
#include "kzcrit/state_vector.h"

using namespace kzcrit;

static void BM_single_qubit_ux(benchmark::State &state) {
    const auto L = static_cast<std::uint32_t>(state.range(0));
    const auto q = static_cast<std::uint32_t>(state.range(1));
    StateVector s(L);
    const Gate g = Gate::ux(q, 0.1);
    for (auto _ : state) {
        s.apply(g);
        benchmark::DoNotOptimize(s.amplitude(0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_single_qubit_ux)->Args({17, 0})->Args({17, 8})->Args({17, 16})->Args({20, 10});

static void BM_cnot(benchmark::State &state) {
    const auto L = static_cast<std::uint32_t>(state.range(0));
    StateVector s(L);
    for (auto _ : state) {
        s.apply(Gate::cnot(3, 4));
        benchmark::DoNotOptimize(s.amplitude(0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_cnot)->Arg(17)->Arg(20);

static void BM_zz_layer(benchmark::State &state) {
    const auto L = static_cast<std::uint32_t>(state.range(0));
    const bool fused = state.range(1) != 0;
    StateVector s(L);
    std::vector<Gate> layer;
    for (std::uint32_t q = 0; q + 1 < L; q += 2) {
        layer.push_back(Gate::uzz(q, q + 1, 0.05));
    }
    for (auto _ : state) {
        if (fused) {
            s.apply(std::span<const Gate>(layer));
        } else {
            for (const Gate &g : layer) {
                s.apply(g);
            }
        }
        benchmark::DoNotOptimize(s.amplitude(0));
    }
    state.SetLabel(fused ? "fused" : "gate by gate");
}
BENCHMARK(BM_zz_layer)->Args({17, 0})->Args({17, 1});

static void BM_ux_layer(benchmark::State &state) {
    const auto L = static_cast<std::uint32_t>(state.range(0));
    const bool fused = state.range(1) != 0;
    StateVector s(L);
    std::vector<Gate> layer;
    for (std::uint32_t q = 0; q < L; q++) {
        layer.push_back(Gate::ux(q, 0.05));
    }
    for (auto _ : state) {
        if (fused) {
            s.apply(std::span<const Gate>(layer));
        } else {
            for (const Gate &g : layer) {
                s.apply(g);
            }
        }
        benchmark::DoNotOptimize(s.amplitude(0));
    }
    state.SetLabel(fused ? "blocked" : "gate by gate");
}
BENCHMARK(BM_ux_layer)->Args({17, 0})->Args({17, 1});

static void BM_drive(benchmark::State &state) {
    const auto L = static_cast<std::uint32_t>(state.range(0));
    const Circuit c = build_drive(KzSchedule::make(L, 4.0, 0.1, 2));
    for (auto _ : state) {
        StateVector s(L);
        s.apply(c);
        benchmark::DoNotOptimize(s.amplitude(0));
    }
    state.counters["gates"] = static_cast<double>(c.gate_count());
}
BENCHMARK(BM_drive)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);
