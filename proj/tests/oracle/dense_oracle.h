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

// Dense-matrix reference implementations used only by tests. Nothing here calls the
// simulator kernels: unitaries are assembled from gate_matrix() entries and Hamiltonians
// from bit arithmetic, then exponentiated through an eigendecomposition.

#ifndef KZCRIT_TESTS_DENSE_ORACLE_H
#define KZCRIT_TESTS_DENSE_ORACLE_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kzcrit/circuit.h"
#include "kzcrit/gate.h"
#include "kzcrit/kz_schedule.h"

namespace kzcrit::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline int bit(std::uint64_t i, std::uint32_t q) { return static_cast<int>((i >> q) & 1); }

/// Full 2^L x 2^L matrix of one gate (qubit 0 = least significant bit).
inline Matrix embed(const Gate &g, std::uint32_t L) {
    const Matrix m = gate_matrix(g);
    const std::uint64_t dim = std::uint64_t{1} << L;
    Matrix U = Matrix::Zero(dim, dim);
    const std::uint32_t q0 = g.qubits[0];
    if (m.rows() == 2) {
        for (std::uint64_t j = 0; j < dim; j++) {
            const int b = bit(j, q0);
            for (int k = 0; k < 2; k++) {
                const std::uint64_t i = (j & ~(std::uint64_t{1} << q0)) | (std::uint64_t(k) << q0);
                U(i, j) += m(k, b);
            }
        }
        return U;
    }
    const std::uint32_t q1 = g.qubits[1];
    for (std::uint64_t j = 0; j < dim; j++) {
        const int col = 2 * bit(j, q0) + bit(j, q1);
        for (int k = 0; k < 4; k++) {
            std::uint64_t i = j & ~((std::uint64_t{1} << q0) | (std::uint64_t{1} << q1));
            i |= std::uint64_t(k >> 1) << q0;
            i |= std::uint64_t(k & 1) << q1;
            U(i, j) += m(k, col);
        }
    }
    return U;
}

inline Matrix unitary(const Circuit &c) {
    const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
    Matrix U = Matrix::Identity(dim, dim);
    for (const auto &g : c.gates()) {
        U = embed(g, c.num_qubits()) * U;
    }
    return U;
}

inline Vector basis(std::uint32_t L, std::uint64_t index) {
    Vector v = Vector::Zero(std::int64_t{1} << L);
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return v;
}

/// Largest entry-wise distance between a and b after removing one global phase,
/// fixed by aligning the largest-magnitude entry of a.
inline double phase_distance(const Matrix &a, const Matrix &b) {
    Eigen::Index r = 0, c = 0;
    a.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0.0) {
        return (a - b).cwiseAbs().maxCoeff();
    }
    const std::complex<double> ph = a(r, c) / b(r, c);
    return (a - b * (ph / std::abs(ph))).cwiseAbs().maxCoeff();
}

/// exp(-i H t) for Hermitian H.
inline Matrix expm_hermitian(const Matrix &H, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    Eigen::VectorXcd ph(w.size());
    for (Eigen::Index i = 0; i < w.size(); i++) {
        ph[i] = std::exp(std::complex<double>(0.0, -w[i] * t));
    }
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// -gx sum X_n - gzz sum Z_n Z_{n+1} on the open chain.
inline Matrix ising_hamiltonian(std::uint32_t L, double gx, double gzz) {
    const std::uint64_t dim = std::uint64_t{1} << L;
    Matrix H = Matrix::Zero(dim, dim);
    for (std::uint64_t i = 0; i < dim; i++) {
        double diag = 0;
        for (std::uint32_t n = 0; n + 1 < L; n++) {
            diag += bit(i, n) == bit(i, n + 1) ? 1.0 : -1.0;
        }
        H(i, i) = -gzz * diag;
        for (std::uint32_t n = 0; n < L; n++) {
            H(i ^ (std::uint64_t{1} << n), i) += -gx;
        }
    }
    return H;
}

/// Uniform superposition followed by exact exp(-i H(t_k) dt) for every step, with the
/// Hamiltonian frozen at the schedule's step times.
inline Vector piecewise_exact(const KzSchedule &s) {
    const std::uint64_t dim = std::uint64_t{1} << s.num_qubits;
    Vector psi = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (std::size_t k = 0; k < s.num_steps(); k++) {
        const auto h = HamiltonianParams::at(s.drive_time, s.step_time_of(k));
        psi = expm_hermitian(ising_hamiltonian(s.num_qubits, h.gx, h.gzz), s.time_step) * psi;
    }
    return psi;
}

/// Dense Z_a Z_b expectation.
inline double zz(const Vector &psi, std::uint32_t a, std::uint32_t b) {
    double s = 0;
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        s += std::norm(psi[i]) * (bit(static_cast<std::uint64_t>(i), a) == bit(static_cast<std::uint64_t>(i), b) ? 1 : -1);
    }
    return s;
}

/// Density matrix after the depolarizing channel: every gate G maps rho -> G rho G^dagger,
/// then rho -> (1 - p) rho + (p / 3) sum_P P rho P (one qubit) or (p / 15) sum over the 15
/// non-identity Pauli pairs (two qubits). Enumerates every Kraus term explicitly.
inline Matrix channel_density(const Circuit &c, double p) {
    const std::uint32_t L = c.num_qubits();
    const std::uint64_t dim = std::uint64_t{1} << L;
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    auto pauli = [L](int k, std::uint32_t q) {
        const Gate g = k == 1 ? Gate::x(q) : k == 2 ? Gate::y(q) : Gate::z(q);
        return embed(g, L);
    };
    for (const auto &g : c.gates()) {
        const Matrix U = embed(g, L);
        rho = U * rho * U.adjoint();
        Matrix acc = (1 - p) * rho;
        if (is_two_qubit(g.kind)) {
            for (int k = 1; k < 16; k++) {
                Matrix P = Matrix::Identity(dim, dim);
                if (k >> 2) {
                    P = pauli(k >> 2, g.qubits[0]) * P;
                }
                if (k & 3) {
                    P = pauli(k & 3, g.qubits[1]) * P;
                }
                acc += (p / 15) * P * rho * P.adjoint();
            }
        } else {
            for (int k = 1; k < 4; k++) {
                const Matrix P = pauli(k, g.qubits[0]);
                acc += (p / 3) * P * rho * P.adjoint();
            }
        }
        rho = acc;
    }
    return rho;
}

}  // namespace kzcrit::oracle

#endif
