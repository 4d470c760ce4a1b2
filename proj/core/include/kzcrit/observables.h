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

#ifndef KZCRIT_OBSERVABLES_H
#define KZCRIT_OBSERVABLES_H

#include <cstdint>
#include <span>

#include "kzcrit/kz_schedule.h"
#include "kzcrit/sampling.h"
#include "kzcrit/state_vector.h"

namespace kzcrit {

struct ObservableEstimate {
    double value = 0.0;
    double std_error = 0.0;  // 0 for exact evaluation
    // Only one of r+x, r-x was inside the chain.
    bool asymmetric = false;
};

// Two-point correlations <Z_r Z_{r+-x}> use 0-based qubit indices and average the two
// sides r+x and r-x. When one side falls off the chain only the other one is used and
// the result is flagged asymmetric; ArgumentError when both sides are off the chain.

/// Estimator from shots: per shot 4 (s_r - 1/2)(s_j - 1/2), std_error = sample std / sqrt(N).
ObservableEstimate correlation_sampled(const SampleSet &samples, std::uint32_t r, std::uint32_t x);

/// Exact expectation from the amplitudes (std_error is 0).
ObservableEstimate correlation_exact(const StateVector &state, std::uint32_t r, std::uint32_t x);

/// <X_q>
double expectation_x(const StateVector &state, std::uint32_t q);
/// <Z_a Z_b>
double expectation_zz(const StateVector &state, std::uint32_t a, std::uint32_t b);

/// <psi| H(T, t) |psi> for the open-chain interpolated Ising Hamiltonian of the schedule.
double energy(const StateVector &state, const KzSchedule &schedule, double t);

/// Von Neumann entropy (natural log) of qubits 0..cut-1 against the rest, from the
/// singular values of the 2^cut x 2^(L-cut) amplitude matrix. Singular values below
/// 1e-12 are dropped. Requires 1 <= cut < L.
double entanglement_entropy(const StateVector &state, std::uint32_t cut);

/// Bhattacharyya overlap sum_s sqrt(p_exact(s) p_sampled(s)).
double fidelity(std::span<const double> p_exact, std::span<const double> p_sampled);

struct KlDivergence {
    double value = 0.0;  // +infinity when `infinite`
    // Some outcome was sampled where p_exact is zero.
    bool infinite = false;
};

/// sum over p_sampled > 0 of p_sampled ln(p_sampled / p_exact).
KlDivergence kl_divergence(std::span<const double> p_sampled, std::span<const double> p_exact);

}  // namespace kzcrit

#endif
