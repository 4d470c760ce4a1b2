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

#include "kzcrit/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

// Amplitudes per cache block when a run of single-qubit gates is applied blockwise.
constexpr std::uint32_t kBlockBits = 12;

// Calls f(i0, i1) for every index pair in [0, dim) that differs only in bit q (i0 has it clear).
template <typename F>
inline void for_each_pair(std::uint64_t dim, std::uint32_t q, F &&f) {
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < dim; base += 2 * step) {
        for (std::uint64_t i = base; i < base + step; i++) {
            f(i, i + step);
        }
    }
}

// 2x2 complex matrix, row-major, as (re, im) pairs.
struct Mat2 {
    double m[8];
};

// Generic single-qubit update in real arithmetic (std::complex multiplication goes through
// a NaN-checking libcall without -ffast-math).
void kernel_matrix(complex_t *amps, std::uint64_t dim, std::uint32_t q, const Mat2 &mat) {
    double *a = reinterpret_cast<double *>(amps);
    const double m00r = mat.m[0], m00i = mat.m[1], m01r = mat.m[2], m01i = mat.m[3];
    const double m10r = mat.m[4], m10i = mat.m[5], m11r = mat.m[6], m11i = mat.m[7];
    auto update = [=](double *__restrict p0, double *__restrict p1) {
        const double x0r = p0[0], x0i = p0[1], x1r = p1[0], x1i = p1[1];
        p0[0] = m00r * x0r - m00i * x0i + m01r * x1r - m01i * x1i;
        p0[1] = m00r * x0i + m00i * x0r + m01r * x1i + m01i * x1r;
        p1[0] = m10r * x0r - m10i * x0i + m11r * x1r - m11i * x1i;
        p1[1] = m10r * x0i + m10i * x0r + m11r * x1i + m11i * x1r;
    };
    const std::uint64_t step = std::uint64_t{1} << q;
    if (step == 1) {
        for (std::uint64_t i = 0; i < dim; i += 2) {
            update(a + 2 * i, a + 2 * i + 2);
        }
        return;
    }
    for (std::uint64_t base = 0; base < dim; base += 2 * step) {
        double *__restrict lo = a + 2 * base;
        double *__restrict hi = a + 2 * (base + step);
        for (std::uint64_t i = 0; i < step; i++) {
            update(lo + 2 * i, hi + 2 * i);
        }
    }
}

// diag(p0, p1) on qubit q.
void kernel_diag1(complex_t *amps, std::uint64_t dim, std::uint32_t q, complex_t p0, complex_t p1) {
    double *a = reinterpret_cast<double *>(amps);
    const double c[2][2] = {{p0.real(), p0.imag()}, {p1.real(), p1.imag()}};
    for (std::uint64_t i = 0; i < dim; i++) {
        const double *p = c[(i >> q) & 1];
        const double re = a[2 * i];
        const double im = a[2 * i + 1];
        a[2 * i] = p[0] * re - p[1] * im;
        a[2 * i + 1] = p[0] * im + p[1] * re;
    }
}

// exp(i angle X) = [[c, i s], [i s, c]]: half the arithmetic of the generic update.
void kernel_ux(complex_t *amps, std::uint64_t dim, std::uint32_t q, double angle) {
    double *a = reinterpret_cast<double *>(amps);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto update = [c, s](double *__restrict p0, double *__restrict p1) {
        const double x0r = p0[0], x0i = p0[1], x1r = p1[0], x1i = p1[1];
        p0[0] = c * x0r - s * x1i;
        p0[1] = c * x0i + s * x1r;
        p1[0] = c * x1r - s * x0i;
        p1[1] = c * x1i + s * x0r;
    };
    const std::uint64_t step = std::uint64_t{1} << q;
    if (step == 1) {
        for (std::uint64_t i = 0; i < dim; i += 2) {
            update(a + 2 * i, a + 2 * i + 2);
        }
        return;
    }
    for (std::uint64_t base = 0; base < dim; base += 2 * step) {
        double *__restrict lo = a + 2 * base;
        double *__restrict hi = a + 2 * (base + step);
        for (std::uint64_t i = 0; i < step; i++) {
            update(lo + 2 * i, hi + 2 * i);
        }
    }
}

// Any single-qubit kind on the amplitudes [0, dim); q < log2(dim).
void kernel_single(complex_t *a, std::uint64_t dim, const Gate &g) {
    const std::uint32_t q = g.qubits[0];
    switch (g.kind) {
        case GateKind::kHadamard: {
            const double s = 1.0 / std::sqrt(2.0);
            kernel_matrix(a, dim, q, {{s, 0, s, 0, s, 0, -s, 0}});
            break;
        }
        case GateKind::kRotX:
            // Rx(phi) = exp(-i phi X / 2) = Ux(-phi/2).
            kernel_ux(a, dim, q, -0.5 * g.angle);
            break;
        case GateKind::kUx:
            kernel_ux(a, dim, q, g.angle);
            break;
        case GateKind::kRotZ:
            kernel_diag1(a, dim, q, std::polar(1.0, -0.5 * g.angle), std::polar(1.0, 0.5 * g.angle));
            break;
        case GateKind::kPauliX:
            for_each_pair(dim, q, [a](std::uint64_t i0, std::uint64_t i1) { std::swap(a[i0], a[i1]); });
            break;
        case GateKind::kPauliY:
            // Y|0> = i|1>, Y|1> = -i|0>
            for_each_pair(dim, q, [a](std::uint64_t i0, std::uint64_t i1) {
                const complex_t v0 = a[i0];
                const complex_t v1 = a[i1];
                a[i0] = {v1.imag(), -v1.real()};
                a[i1] = {-v0.imag(), v0.real()};
            });
            break;
        case GateKind::kPauliZ:
            for_each_pair(dim, q, [a](std::uint64_t, std::uint64_t i1) { a[i1] = -a[i1]; });
            break;
        case GateKind::kIdentity:
            break;
        default:
            throw UnsupportedGateError("not a single-qubit gate kind " + std::to_string(static_cast<int>(g.kind)));
    }
}

void kernel_cnot(complex_t *a, std::uint64_t dim, std::uint32_t c, std::uint32_t t) {
    const std::uint64_t cmask = std::uint64_t{1} << c;
    for_each_pair(dim, t, [a, cmask](std::uint64_t i0, std::uint64_t i1) {
        if (i0 & cmask) {
            std::swap(a[i0], a[i1]);
        }
    });
}

void kernel_cphase(complex_t *amps, std::uint64_t dim, std::uint32_t qa, std::uint32_t qb, complex_t phase) {
    const std::uint64_t mask = (std::uint64_t{1} << qa) | (std::uint64_t{1} << qb);
    double *a = reinterpret_cast<double *>(amps);
    const double pr = phase.real();
    const double pi = phase.imag();
    for (std::uint64_t i = 0; i < dim; i++) {
        if ((i & mask) == mask) {
            const double re = a[2 * i];
            const double im = a[2 * i + 1];
            a[2 * i] = pr * re - pi * im;
            a[2 * i + 1] = pr * im + pi * re;
        }
    }
}

// Product of n commuting exp(i angle Z_a Z_b) with one shared angle, in one pass. The phase
// of basis state i is exp(i angle (n - 2 k)) with k the number of odd-parity pairs.
void kernel_zz_layer(complex_t *amps, std::uint64_t dim, std::span<const Gate> layer) {
    const std::size_t n = layer.size();
    const double angle = layer.front().angle;
    std::vector<double> table(2 * (n + 1));
    for (std::size_t k = 0; k <= n; k++) {
        const double theta = angle * (static_cast<double>(n) - 2.0 * static_cast<double>(k));
        table[2 * k] = std::cos(theta);
        table[2 * k + 1] = std::sin(theta);
    }
    const double *__restrict phase = table.data();
    double *__restrict a = reinterpret_cast<double *>(amps);
    auto rotate = [a, phase](std::uint64_t i, std::uint64_t k) {
        const double pr = phase[2 * k];
        const double pi = phase[2 * k + 1];
        const double re = a[2 * i];
        const double im = a[2 * i + 1];
        a[2 * i] = pr * re - pi * im;
        a[2 * i + 1] = pr * im + pi * re;
    };
    bool nearest = true;
    std::uint64_t low = 0;  // lower qubit of each nearest-neighbour pair
    for (const Gate &g : layer) {
        const auto lo = std::min(g.qubits[0], g.qubits[1]);
        const auto hi = std::max(g.qubits[0], g.qubits[1]);
        nearest = nearest && hi == lo + 1 && !(low & (std::uint64_t{1} << lo));
        low |= std::uint64_t{1} << lo;
    }
    if (nearest && dim >= 128) {
        // Within a block of 64, bits >= 6 of i ^ (i >> 1) are fixed by the block base and
        // the low six depend on j and on bit 6. Precompute one row of 64 phases for every
        // (bit 6, high count) and multiply rows in, which vectorizes.
        std::vector<double> rows(2 * (n + 1) * 64 * 2);
        for (std::uint64_t b6 = 0; b6 < 2; b6++) {
            for (std::uint64_t h = 0; h <= n; h++) {
                double *row = rows.data() + (b6 * (n + 1) + h) * 128;
                for (std::uint64_t j = 0; j < 64; j++) {
                    const std::uint64_t i = j | (b6 << 6);
                    std::uint64_t k = h + static_cast<std::uint64_t>(std::popcount((i ^ (i >> 1)) & low & 63));
                    k = std::min<std::uint64_t>(k, n);
                    row[2 * j] = phase[2 * k];
                    row[2 * j + 1] = phase[2 * k + 1];
                }
            }
        }
        for (std::uint64_t base = 0; base < dim; base += 64) {
            const std::uint64_t b6 = (base >> 6) & 1;
            const auto h = static_cast<std::uint64_t>(std::popcount((base ^ (base >> 1)) & low & ~std::uint64_t{63}));
            const double *__restrict row = rows.data() + (b6 * (n + 1) + h) * 128;
            double *__restrict blk = a + 2 * base;
            for (std::uint64_t j = 0; j < 64; j++) {
                const double pr = row[2 * j];
                const double pi = row[2 * j + 1];
                const double re = blk[2 * j];
                const double im = blk[2 * j + 1];
                blk[2 * j] = pr * re - pi * im;
                blk[2 * j + 1] = pr * im + pi * re;
            }
        }
        return;
    }
    if (nearest) {
        for (std::uint64_t i = 0; i < dim; i++) {
            rotate(i, static_cast<std::uint64_t>(std::popcount((i ^ (i >> 1)) & low)));
        }
        return;
    }
    std::vector<std::uint64_t> masks;
    for (const Gate &g : layer) {
        masks.push_back((std::uint64_t{1} << g.qubits[0]) | (std::uint64_t{1} << g.qubits[1]));
    }
    for (std::uint64_t i = 0; i < dim; i++) {
        std::uint64_t k = 0;
        for (const std::uint64_t m : masks) {
            k += static_cast<std::uint64_t>(std::popcount(i & m) & 1);
        }
        rotate(i, k);
    }
}

void check_targets(const Gate &g, std::uint32_t num_qubits) {
    const bool two = is_two_qubit(g.kind);
    const auto q0 = g.qubits[0];
    const auto q1 = g.qubits[1];
    if (q0 >= num_qubits || (two && (q1 >= num_qubits || q1 == q0))) {
        throw ArgumentError(std::string(gate_name(g.kind)) + " target out of range for " + std::to_string(num_qubits) +
                            " qubits");
    }
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits, std::uint32_t max_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw ArgumentError("a state needs at least one qubit");
    }
    if (num_qubits > max_qubits) {
        throw ArgumentError("state of " + std::to_string(num_qubits) + " qubits exceeds the cap of " +
                            std::to_string(max_qubits));
    }
    amps_.assign(std::uint64_t{1} << num_qubits, complex_t{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis_state(std::uint32_t num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw ArgumentError("basis index " + std::to_string(index) + " out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::uint32_t num_qubits, std::vector<complex_t> amplitudes) {
    if (num_qubits == 0 || num_qubits > kDefaultMaxQubits) {
        throw ArgumentError("unsupported qubit count " + std::to_string(num_qubits));
    }
    if (amplitudes.size() != (std::uint64_t{1} << num_qubits)) {
        throw ArgumentError("expected 2^" + std::to_string(num_qubits) + " amplitudes, got " +
                            std::to_string(amplitudes.size()));
    }
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.amps_ = std::move(amplitudes);
    return s;
}

void StateVector::apply(const Gate &g) {
    check_targets(g, num_qubits_);
    complex_t *a = amps_.data();
    const std::uint64_t dim = dimension();
    switch (g.kind) {
        case GateKind::kCnot:
            kernel_cnot(a, dim, g.qubits[0], g.qubits[1]);
            break;
        case GateKind::kCz:
            kernel_cphase(a, dim, g.qubits[0], g.qubits[1], complex_t{-1.0, 0.0});
            break;
        case GateKind::kCPhase:
            kernel_cphase(a, dim, g.qubits[0], g.qubits[1], std::polar(1.0, g.angle));
            break;
        case GateKind::kUzz:
            kernel_zz_layer(a, dim, std::span<const Gate>(&g, 1));
            break;
        default:
            kernel_single(a, dim, g);
    }
}

void StateVector::apply(const Circuit &c) {
    if (c.num_qubits() != num_qubits_) {
        throw ArgumentError("circuit acts on " + std::to_string(c.num_qubits()) + " qubits, state has " +
                            std::to_string(num_qubits_));
    }
    apply(c.gates());
}

// Runs of gates that commute in a useful way are fused into fewer passes over the state:
// consecutive UZZ gates sharing an angle become one diagonal pass, and consecutive
// single-qubit gates on low qubits are applied block by block while the block is in cache.
// Results agree with gate-by-gate application up to rounding.
void StateVector::apply(std::span<const Gate> gates) {
    for (const Gate &g : gates) {
        check_targets(g, num_qubits_);
    }
    complex_t *a = amps_.data();
    const std::uint64_t dim = dimension();
    std::size_t i = 0;
    while (i < gates.size()) {
        const Gate &g = gates[i];
        std::size_t j = i + 1;
        if (g.kind == GateKind::kUzz) {
            while (j < gates.size() && gates[j].kind == GateKind::kUzz && gates[j].angle == g.angle) {
                j++;
            }
            kernel_zz_layer(a, dim, gates.subspan(i, j - i));
            i = j;
            continue;
        }
        if (is_two_qubit(g.kind) || num_qubits_ <= kBlockBits) {
            apply(g);
            i = j;
            continue;
        }
        while (j < gates.size() && !is_two_qubit(gates[j].kind)) {
            j++;
        }
        if (j - i == 1) {
            apply(g);
            i = j;
            continue;
        }
        // Gates on different qubits commute, so the low-qubit gates can all be applied
        // inside each block before the high-qubit ones (order kept per qubit).
        const std::uint64_t block = std::uint64_t{1} << kBlockBits;
        for (std::uint64_t base = 0; base < dim; base += block) {
            for (std::size_t k = i; k < j; k++) {
                if (gates[k].qubits[0] < kBlockBits) {
                    kernel_single(a + base, block, gates[k]);
                }
            }
        }
        for (std::size_t k = i; k < j; k++) {
            if (gates[k].qubits[0] >= kBlockBits) {
                kernel_single(a, dim, gates[k]);
            }
        }
        i = j;
    }
}

double StateVector::norm_squared() const {
    double s = 0;
    for (const complex_t &v : amps_) {
        s += std::norm(v);
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); i++) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

}  // namespace kzcrit
