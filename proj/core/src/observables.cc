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

#include "kzcrit/observables.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

struct Partners {
    std::uint32_t r;
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    bool has_lo = false;
    bool has_hi = false;
};

Partners partners(std::uint32_t num_qubits, std::uint32_t r, std::uint32_t x) {
    if (r >= num_qubits) {
        throw ArgumentError("reference qubit " + std::to_string(r) + " outside " + std::to_string(num_qubits) +
                            " qubits");
    }
    Partners p{r};
    if (x <= r) {
        p.lo = r - x;
        p.has_lo = true;
    }
    if (std::uint64_t{r} + x < num_qubits) {
        p.hi = r + x;
        p.has_hi = true;
    }
    if (!p.has_lo && !p.has_hi) {
        throw ArgumentError("both r-x and r+x fall outside the chain (r=" + std::to_string(r) +
                            ", x=" + std::to_string(x) + ")");
    }
    return p;
}

inline double zval(std::uint64_t index, std::uint32_t q) { return ((index >> q) & 1) ? -1.0 : 1.0; }

}  // namespace

ObservableEstimate correlation_sampled(const SampleSet &samples, std::uint32_t r, std::uint32_t x) {
    const Partners p = partners(samples.num_qubits, r, x);
    if (samples.shots == 0) {
        throw ArgumentError("empty sample set");
    }
    const int sides = (p.has_lo ? 1 : 0) + (p.has_hi ? 1 : 0);
    double sum = 0;
    double sum_sq = 0;
    for (const auto &[k, n] : samples.counts) {
        // 4 (s_i - 1/2)(s_j - 1/2) equals z_i z_j with z = 1 - 2 s.
        double v = 0;
        if (p.has_lo) {
            v += zval(k, r) * zval(k, p.lo);
        }
        if (p.has_hi) {
            v += zval(k, r) * zval(k, p.hi);
        }
        v /= sides;
        sum += v * static_cast<double>(n);
        sum_sq += v * v * static_cast<double>(n);
    }
    const double N = static_cast<double>(samples.shots);
    ObservableEstimate e;
    e.value = sum / N;
    double var = samples.shots > 1 ? (sum_sq - N * e.value * e.value) / (N - 1) : 0.0;
    e.std_error = std::sqrt(std::max(var, 0.0) / N);
    e.asymmetric = sides == 1;
    return e;
}

double expectation_zz(const StateVector &state, std::uint32_t a, std::uint32_t b) {
    auto amps = state.amplitudes();
    double s = 0;
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        const double w = std::norm(amps[i]);
        s += (((i >> a) ^ (i >> b)) & 1) ? -w : w;
    }
    return s;
}

double expectation_x(const StateVector &state, std::uint32_t q) {
    auto amps = state.amplitudes();
    const std::uint64_t step = std::uint64_t{1} << q;
    double s = 0;
    for (std::uint64_t base = 0; base < amps.size(); base += 2 * step) {
        for (std::uint64_t i = base; i < base + step; i++) {
            s += (std::conj(amps[i]) * amps[i + step]).real();
        }
    }
    return 2 * s;
}

ObservableEstimate correlation_exact(const StateVector &state, std::uint32_t r, std::uint32_t x) {
    const Partners p = partners(state.num_qubits(), r, x);
    double v = 0;
    int sides = 0;
    if (p.has_lo) {
        v += expectation_zz(state, r, p.lo);
        sides++;
    }
    if (p.has_hi) {
        v += expectation_zz(state, r, p.hi);
        sides++;
    }
    return {v / sides, 0.0, sides == 1};
}

double energy(const StateVector &state, const KzSchedule &schedule, double t) {
    if (state.num_qubits() != schedule.num_qubits) {
        throw ArgumentError("state and schedule disagree on the number of qubits");
    }
    const auto g = HamiltonianParams::at(schedule.drive_time, t);
    double field = 0;
    for (std::uint32_t q = 0; q < state.num_qubits(); q++) {
        field += expectation_x(state, q);
    }
    double bonds = 0;
    for (std::uint32_t q = 0; q + 1 < state.num_qubits(); q++) {
        bonds += expectation_zz(state, q, q + 1);
    }
    return -g.gx * field - g.gzz * bonds;
}

double entanglement_entropy(const StateVector &state, std::uint32_t cut) {
    const std::uint32_t n = state.num_qubits();
    if (cut < 1 || cut >= n) {
        throw ArgumentError("entropy cut must satisfy 1 <= cut < L (got " + std::to_string(cut) + ")");
    }
    const Eigen::Index rows = Eigen::Index{1} << cut;
    const Eigen::Index cols = Eigen::Index{1} << (n - cut);
    // Column-major map: element (a, b) sits at a + b * 2^cut, i.e. a holds qubits 0..cut-1.
    Eigen::Map<const Eigen::MatrixXcd> psi(state.amplitudes().data(), rows, cols);
    Eigen::VectorXd sv;
    if (rows <= cols) {
        Eigen::MatrixXcd rho = psi * psi.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    } else {
        Eigen::MatrixXcd rho = psi.adjoint() * psi;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    }
    double s = 0;
    for (Eigen::Index i = 0; i < sv.size(); i++) {
        if (sv[i] < 1e-12) {
            continue;
        }
        const double w = sv[i] * sv[i];
        s -= w * std::log(w);
    }
    return s;
}

double fidelity(std::span<const double> p_exact, std::span<const double> p_sampled) {
    if (p_exact.size() != p_sampled.size()) {
        throw ArgumentError("distributions over different outcome sets");
    }
    double f = 0;
    for (std::size_t i = 0; i < p_exact.size(); i++) {
        f += std::sqrt(p_exact[i] * p_sampled[i]);
    }
    return f;
}

KlDivergence kl_divergence(std::span<const double> p_sampled, std::span<const double> p_exact) {
    if (p_exact.size() != p_sampled.size()) {
        throw ArgumentError("distributions over different outcome sets");
    }
    KlDivergence kl;
    for (std::size_t i = 0; i < p_sampled.size(); i++) {
        if (p_sampled[i] <= 0) {
            continue;
        }
        if (p_exact[i] <= 0) {
            kl.infinite = true;
            kl.value = std::numeric_limits<double>::infinity();
            return kl;
        }
        kl.value += p_sampled[i] * std::log(p_sampled[i] / p_exact[i]);
    }
    return kl;
}

}  // namespace kzcrit
