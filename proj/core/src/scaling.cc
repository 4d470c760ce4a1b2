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

#include "kzcrit/scaling.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "kzcrit/error.h"
#include "kzcrit/parallel.h"

namespace kzcrit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;

struct LinearSolve {
    bool ok = false;
    double chi2 = kInf;
    Eigen::VectorXd coefficients;
};

LinearSolve solve_fixed_decay(std::span<const ScaledPoint> pts, int order, double decay) {
    const auto n = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index cols = order + 1;
    Eigen::MatrixXd A(n, cols);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; i++) {
        const auto &p = pts[static_cast<std::size_t>(i)];
        const double w = std::exp(-decay * p.X) / p.dY;
        double xm = 1.0;
        for (Eigen::Index j = 0; j < cols; j++) {
            A(i, j) = xm * w;
            xm *= p.X;
        }
        b[i] = p.Y / p.dY;
    }
    LinearSolve out;
    // Column equilibration keeps the rank test meaningful when X^M spans many decades.
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < cols; j++) {
        if (!(scale[j] > 1e-300) || !std::isfinite(scale[j])) {
            return out;
        }
        A.col(j) /= scale[j];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-11);
    if (qr.rank() < cols) {
        return out;
    }
    Eigen::VectorXd c = qr.solve(b);
    out.chi2 = (A * c - b).squaredNorm();
    out.coefficients = c.cwiseQuotient(scale);
    out.ok = std::isfinite(out.chi2);
    return out;
}

// Golden-section minimum of f on [a, b]; stops when the bracket is below tol * scale.
template <typename F>
std::pair<double, double> golden_section(F &&f, double a, double b, double tol, double scale) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 300 && (b - a) > tol * scale; it++) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; i++) {
        v[static_cast<std::size_t>(i)] = n == 1 ? lo : std::exp(a + (b - a) * i / (n - 1));
    }
    return v;
}

// Index k in [0, count) whose value(k) is closest to v; grids need not be sorted.
template <typename F>
std::size_t nearest(std::size_t count, F &&value, double v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < count; k++) {
        if (std::abs(value(k) - v) < std::abs(value(best) - v)) {
            best = k;
        }
    }
    return best;
}

}  // namespace

std::vector<std::string> RescalingParams::violations() const {
    std::vector<std::string> v;
    if (!(nu > 0) || !std::isfinite(nu)) {
        v.push_back("nu must be positive");
    }
    if (!(z > 0) || !std::isfinite(z)) {
        v.push_back("z must be positive");
    }
    if (!std::isfinite(eta)) {
        v.push_back("eta must be finite");
    }
    return v;
}

std::vector<ScaledPoint> rescale(std::span<const DataPoint> points, const RescalingParams &params,
                                 std::optional<double> xi_tilde) {
    if (auto v = params.violations(); !v.empty()) {
        throw ArgumentError(v.front());
    }
    const double a = params.length_exponent();
    const double b = params.prefactor_exponent();
    const bool corrected = xi_tilde.has_value() && std::isfinite(*xi_tilde);
    if (corrected && !(*xi_tilde > 0)) {
        throw ArgumentError("xi_tilde must be positive");
    }
    std::vector<ScaledPoint> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        if (!(p.T > 0)) {
            throw ArgumentError("rescale needs T > 0");
        }
        const double tb = std::pow(p.T, b);
        const double f = corrected ? std::exp(p.x * p.T / *xi_tilde) : 1.0;
        ScaledPoint s;
        s.X = p.x * std::pow(p.T, -a);
        s.Y = p.value * tb * f;
        s.dY = p.std_error > 0 ? std::max(p.std_error * tb * f, kDyFloor) : 1.0;
        out.push_back(s);
    }
    return out;
}

std::string decay_mode_name(DecayMode m) { return m == DecayMode::kFree ? "free" : "fixed0"; }

DecayMode decay_mode_from_name(const std::string &name) {
    if (name == "free") {
        return DecayMode::kFree;
    }
    if (name == "fixed0" || name == "fixed") {
        return DecayMode::kFixedZero;
    }
    throw ArgumentError("unknown decay mode '" + name + "' (expected free or fixed0)");
}

double ScalingFit::operator()(double X) const {
    double s = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        s = s * X + *it;
    }
    return s * std::exp(-decay * X);
}

ScalingFit fit_scaling_function(std::span<const ScaledPoint> points, const ScalingFitOptions &options) {
    const int M = options.order;
    if (M < 0) {
        throw ArgumentError("Taylor order must be nonnegative");
    }
    const bool free = options.decay == DecayMode::kFree;
    const long params = M + (free ? 2 : 1);
    const auto n = static_cast<long>(points.size());
    if (n <= params) {
        throw ArgumentError("scaling fit needs more than " + std::to_string(params) + " points (got " +
                            std::to_string(n) + ")");
    }
    for (const auto &p : points) {
        if (!(p.dY > 0) || !std::isfinite(p.X) || !std::isfinite(p.Y)) {
            throw ArgumentError("scaling fit needs finite points with dY > 0");
        }
    }

    LinearSolve at_zero = solve_fixed_decay(points, M, 0.0);
    if (!at_zero.ok) {
        double lo = kInf;
        double hi = -kInf;
        for (const auto &p : points) {
            lo = std::min(lo, p.X);
            hi = std::max(hi, p.X);
        }
        throw RankDeficiencyError("degenerate design matrix for Taylor order " + std::to_string(M), lo, hi);
    }

    double best_decay = 0.0;
    double best_chi2 = at_zero.chi2;
    if (free) {
        const auto seeds = logspace(options.decay_min, options.decay_max, options.decay_seeds);
        auto chi2_at = [&](double d) { return solve_fixed_decay(points, M, d).chi2; };
        std::vector<double> values(seeds.size());
        std::size_t arg = 0;
        bool seed_wins = false;
        for (std::size_t i = 0; i < seeds.size(); i++) {
            values[i] = chi2_at(seeds[i]);
            if (values[i] < best_chi2) {
                best_chi2 = values[i];
                best_decay = seeds[i];
                arg = i;
                seed_wins = true;
            }
        }
        std::pair<double, double> refined;
        if (!seed_wins || arg == 0) {
            // Bracket [0, seed_1] (or [0, seed_0]) in linear coordinates.
            const double hi = seeds[seed_wins ? std::min<std::size_t>(1, seeds.size() - 1) : 0];
            refined = golden_section(chi2_at, 0.0, hi, options.decay_tolerance, hi);
        } else {
            const double lo = std::log(seeds[arg - 1]);
            const double hi = std::log(seeds[std::min(arg + 1, seeds.size() - 1)]);
            auto g = [&](double u) { return chi2_at(std::exp(u)); };
            refined = golden_section(g, lo, hi, options.decay_tolerance, 1.0);
            refined.first = std::exp(refined.first);
        }
        if (refined.second < best_chi2) {
            best_chi2 = refined.second;
            best_decay = refined.first;
        }
    }

    const LinearSolve final_solve = best_decay == 0.0 ? at_zero : solve_fixed_decay(points, M, best_decay);
    ScalingFit fit;
    fit.order = M;
    fit.decay = best_decay;
    fit.decay_free = free;
    fit.chi2 = final_solve.chi2;
    fit.dof = n - params;
    fit.coefficients.assign(final_solve.coefficients.data(),
                            final_solve.coefficients.data() + final_solve.coefficients.size());
    return fit;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; i++) {
        v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

bool ScanResult::in_bounds(std::size_t cell) const {
    const auto &c = cells[cell];
    return !c.failed && c.chi2_per_dof <= bounds_factor * min_chi2_per_dof;
}

std::size_t ScanResult::region_size() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < cells.size(); i++) {
        n += in_bounds(i) ? 1 : 0;
    }
    return n;
}

double ScanResult::value_near(double nu, double eta) const {
    const std::size_t i = nearest(nu_count, [this](std::size_t k) { return cells[k * eta_count].nu; }, nu);
    const std::size_t j = nearest(eta_count, [this](std::size_t k) { return cells[k].eta; }, eta);
    return cells[i * eta_count + j].chi2_per_dof;
}

bool ScanResult::region_contains(double nu, double eta) const {
    const std::size_t i = nearest(nu_count, [this](std::size_t k) { return cells[k * eta_count].nu; }, nu);
    const std::size_t j = nearest(eta_count, [this](std::size_t k) { return cells[k].eta; }, eta);
    return in_bounds(i * eta_count + j);
}

ScanResult exponent_scan(std::span<const DataPoint> points, const ScanOptions &options) {
    if (options.nu_grid.empty() || options.eta_grid.empty()) {
        throw ArgumentError("exponent scan needs nonempty grids");
    }
    ScanResult r;
    r.nu_count = options.nu_grid.size();
    r.eta_count = options.eta_grid.size();
    r.bounds_factor = options.bounds_factor;
    r.cells.resize(r.nu_count * r.eta_count);
    parallel_for(r.cells.size(), options.threads, [&](std::size_t k, unsigned) {
        ScanCell &cell = r.cells[k];
        cell.nu = options.nu_grid[k / r.eta_count];
        cell.eta = options.eta_grid[k % r.eta_count];
        try {
            const RescalingParams params{cell.nu, options.z, cell.eta};
            const auto scaled = rescale(points, params, options.xi_tilde);
            cell.chi2_per_dof = fit_scaling_function(scaled, options.fit).chi2_per_dof();
            cell.failed = !std::isfinite(cell.chi2_per_dof);
        } catch (const Error &) {
            cell.failed = true;
        }
        if (cell.failed) {
            cell.chi2_per_dof = std::numeric_limits<double>::quiet_NaN();
        }
    });
    r.min_chi2_per_dof = kInf;
    for (std::size_t k = 0; k < r.cells.size(); k++) {
        if (r.cells[k].failed) {
            r.failed_cells++;
        } else if (r.cells[k].chi2_per_dof < r.min_chi2_per_dof) {
            r.min_chi2_per_dof = r.cells[k].chi2_per_dof;
            r.argmin = k;
        }
    }
    if (r.failed_cells == r.cells.size()) {
        throw NumericError("every cell of the exponent scan failed to fit");
    }
    return r;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> weights) {
    if (x.size() != y.size() || (!weights.empty() && weights.size() != x.size())) {
        throw ArgumentError("linear_fit: mismatched input lengths");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw ArgumentError("linear_fit needs at least two points");
    }
    const bool weighted = !weights.empty();
    double W = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t i = 0; i < n; i++) {
        const double w = weighted ? weights[i] : 1.0;
        if (!(w > 0) || !std::isfinite(w)) {
            throw ArgumentError("linear_fit weights must be positive and finite");
        }
        W += w;
        Sx += w * x[i];
        Sy += w * y[i];
        Sxx += w * x[i] * x[i];
        Sxy += w * x[i] * y[i];
    }
    const double delta = W * Sxx - Sx * Sx;
    if (!(delta > 0)) {
        throw ArgumentError("linear_fit: all x values coincide");
    }
    LinearFit f;
    f.n = n;
    f.slope = (W * Sxy - Sx * Sy) / delta;
    f.intercept = (Sxx * Sy - Sx * Sxy) / delta;
    const double ybar = Sy / W;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < n; i++) {
        const double w = weighted ? weights[i] : 1.0;
        const double r = y[i] - f.intercept - f.slope * x[i];
        ss_res += w * r * r;
        ss_tot += w * (y[i] - ybar) * (y[i] - ybar);
    }
    f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res == 0 ? 1.0 : 0.0);
    const double s2 = weighted ? 1.0 : (n > 2 ? ss_res / static_cast<double>(n - 2) : 0.0);
    f.slope_err = std::sqrt(s2 * W / delta);
    f.intercept_err = std::sqrt(s2 * Sxx / delta);
    return f;
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ArgumentError("loglog_fit: mismatched input lengths");
    }
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); i++) {
        if (!(x[i] > 0) || !(y[i] > 0)) {
            throw ArgumentError("loglog_fit needs positive values");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

NoiseLengthFit extract_xi(std::span<const RatioPoint> points, double x_min, double x_max) {
    NoiseLengthFit f;
    f.x_min = x_min;
    f.x_max = x_max;
    std::vector<double> xs, ys, ws;
    bool all_have_errors = true;
    for (const auto &p : points) {
        if (p.x < x_min || p.x > x_max) {
            continue;
        }
        if (!(p.ratio > 0)) {
            f.warnings.push_back("dropped nonpositive ratio at x=" + std::to_string(p.x));
            continue;
        }
        xs.push_back(p.x);
        ys.push_back(std::log(p.ratio));
        if (p.std_error > 0) {
            const double s = p.std_error / p.ratio;
            ws.push_back(1.0 / (s * s));
        } else {
            all_have_errors = false;
        }
    }
    if (xs.size() < 3) {
        throw ArgumentError("extract_xi needs at least 3 usable points in the window [" + std::to_string(x_min) +
                            ", " + std::to_string(x_max) + "]");
    }
    const LinearFit lf = all_have_errors ? linear_fit(xs, ys, ws) : linear_fit(xs, ys);
    f.used_points = xs.size();
    f.slope = lf.slope;
    f.slope_err = lf.slope_err;
    f.intercept = lf.intercept;
    if (!(lf.slope < 0)) {
        f.no_decay = true;
        f.xi = kInf;
        f.xi_err = kInf;
    } else {
        f.xi = -1.0 / lf.slope;
        f.xi_err = lf.slope_err / (lf.slope * lf.slope);
    }
    return f;
}

XiTildeFit fit_xi_tilde(std::span<const DataPoint> points, const RescalingParams &params,
                        const XiTildeOptions &options) {
    std::set<double> drive_times;
    for (const auto &p : points) {
        drive_times.insert(p.T);
    }
    if (drive_times.size() < 2) {
        throw ArgumentError("fit_xi_tilde needs points from at least two drive times");
    }
    if (!(options.min > 0) || !(options.max > options.min) || options.seeds < 3) {
        throw ArgumentError("fit_xi_tilde: bad search range");
    }
    auto profile_at = [&](double xt) {
        try {
            return fit_scaling_function(rescale(points, params, xt), options.fit).chi2_per_dof();
        } catch (const Error &) {
            return kInf;
        }
    };
    XiTildeFit r;
    r.uncorrected_chi2_per_dof = profile_at(kInf);
    const auto seeds = logspace(options.min, options.max, options.seeds);
    std::size_t arg = 0;
    double lo_v = kInf;
    double hi_v = -kInf;
    for (std::size_t i = 0; i < seeds.size(); i++) {
        const double v = profile_at(seeds[i]);
        r.profile.emplace_back(seeds[i], v);
        if (v < r.profile[arg].second) {
            arg = i;
        }
        if (std::isfinite(v)) {
            lo_v = std::min(lo_v, v);
            hi_v = std::max(hi_v, v);
        }
    }
    if (!std::isfinite(lo_v)) {
        throw NumericError("fit_xi_tilde: no xi_tilde in the search range gave a valid fit");
    }
    r.xi_tilde = seeds[arg];
    r.chi2_per_dof = r.profile[arg].second;
    r.at_edge = arg == 0 || arg + 1 == seeds.size();
    // Flat overall, or no better than the uncorrected end of the range.
    const double tail = r.profile.back().second;
    r.unidentifiable = hi_v - lo_v <= options.flat_threshold * lo_v ||
                       (std::isfinite(tail) && tail - lo_v <= options.flat_threshold * lo_v);
    if (!r.at_edge) {
        auto g = [&](double u) { return profile_at(std::exp(u)); };
        auto [u, v] = golden_section(g, std::log(seeds[arg - 1]), std::log(seeds[arg + 1]), options.tolerance, 1.0);
        if (v < r.chi2_per_dof) {
            r.xi_tilde = std::exp(u);
            r.chi2_per_dof = v;
        }
    }
    r.fit = fit_scaling_function(rescale(points, params, r.xi_tilde), options.fit);
    return r;
}

}  // namespace kzcrit
