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

#ifndef KZCRIT_SCALING_H
#define KZCRIT_SCALING_H

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kzcrit {

/// Kibble-Zurek rescaling exponents. The derived exponents are always recomputed.
struct RescalingParams {
    double nu = 1.0;
    double z = 1.0;
    double eta = 0.25;

    /// a = nu / (1 + z nu): X = x T^(-a).
    double length_exponent() const { return nu / (1.0 + z * nu); }
    /// b = nu eta / (1 + z nu): Y = C T^b.
    double prefactor_exponent() const { return nu * eta / (1.0 + z * nu); }
    std::vector<std::string> violations() const;
};

/// One measured correlation C(T, t, x) with its standard error (0 for exact data).
struct DataPoint {
    double T = 1.0;
    double t = 0.0;
    double x = 1.0;
    double value = 0.0;
    double std_error = 0.0;
};

struct ScaledPoint {
    double X;
    double Y;
    double dY;
};

/// ΔY is never allowed below this.
inline constexpr double kDyFloor = 1e-12;

/// X = x T^-a, Y = C T^b, ΔY = ΔC T^b. Points with zero standard error are exact data
/// and get ΔY = 1. With a finite xi_tilde, Y and ΔY are both multiplied by exp(x T / xi_tilde),
/// which is the same chi^2 as keeping exp(-x T / xi_tilde) inside the scaling function.
/// An infinite xi_tilde is the same as none.
std::vector<ScaledPoint> rescale(std::span<const DataPoint> points, const RescalingParams &params,
                                 std::optional<double> xi_tilde = std::nullopt);

enum class DecayMode {
    kFree,       // fit the exponential parameter
    kFixedZero,  // force it to 0
};

std::string decay_mode_name(DecayMode m);
/// "free" or "fixed0".
DecayMode decay_mode_from_name(const std::string &name);

struct ScalingFitOptions {
    int order = 4;  // Taylor order M
    DecayMode decay = DecayMode::kFree;
    double decay_min = 1e-3;
    double decay_max = 1e3;
    int decay_seeds = 61;
    // Relative tolerance of the golden-section refinement of the decay parameter.
    double decay_tolerance = 1e-10;
};

/// F(X) = (sum_m a_m X^m) exp(-decay X).
struct ScalingFit {
    int order = 0;
    std::vector<double> coefficients;
    double decay = 0.0;
    bool decay_free = true;
    double chi2 = 0.0;
    long dof = 0;

    double chi2_per_dof() const { return chi2 / static_cast<double>(dof); }
    double operator()(double X) const;
};

/// Weighted least squares of the Taylor x exponential ansatz. For each candidate decay
/// the model is linear in a_m and solved by QR; the decay is picked from 0 and a log grid
/// and refined by golden section. Throws ArgumentError when there are not more than
/// M + 2 points and RankDeficiencyError when the design matrix is degenerate.
ScalingFit fit_scaling_function(std::span<const ScaledPoint> points, const ScalingFitOptions &options = {});

/// n evenly spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

struct ScanOptions {
    std::vector<double> nu_grid = linspace(0.5, 1.5, 101);
    std::vector<double> eta_grid = linspace(0.0, 0.5, 101);
    double z = 1.0;
    ScalingFitOptions fit;
    double bounds_factor = 1.2;
    std::optional<double> xi_tilde;
    unsigned threads = 1;
};

struct ScanCell {
    double nu;
    double eta;
    double chi2_per_dof;  // NaN when the cell's fit failed
    bool failed = false;
};

struct ScanResult {
    std::vector<ScanCell> cells;  // nu-major: cell (i, j) at i * eta_grid.size() + j
    std::size_t nu_count = 0;
    std::size_t eta_count = 0;
    std::size_t argmin = 0;
    double min_chi2_per_dof = 0.0;
    double bounds_factor = 1.2;
    std::size_t failed_cells = 0;

    const ScanCell &best() const { return cells[argmin]; }
    bool in_bounds(std::size_t cell) const;
    /// Whether the grid cell nearest to (nu, eta) lies in the bounds region.
    bool region_contains(double nu, double eta) const;
    std::size_t region_size() const;
    /// chi^2/N_dof of the grid cell nearest to (nu, eta).
    double value_near(double nu, double eta) const;
};

/// chi^2/N_dof of the collapse over a (nu, eta) grid. Failed cells are flagged, not fatal.
ScanResult exponent_scan(std::span<const DataPoint> points, const ScanOptions &options = {});

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
    double intercept_err = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

/// Least squares y = intercept + slope x. With weights (1/sigma^2) the parameter errors
/// come from the weighted normal matrix; without, from the residual variance.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> weights = {});

/// Slope of log y against log x; all values must be positive.
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

/// One ratio C(x, p) / C(x, 0) with its standard error.
struct RatioPoint {
    double x;
    double ratio;
    double std_error;
};

struct NoiseLengthFit {
    double xi = 0.0;  // +infinity with no_decay
    double xi_err = 0.0;
    double slope = 0.0;
    double slope_err = 0.0;
    double intercept = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t used_points = 0;
    bool no_decay = false;
    std::vector<std::string> warnings;

    /// xi_tilde = T xi.
    double xi_tilde(double drive_time) const { return drive_time * xi; }
};

/// Linear fit of ln(ratio) against x over x_min <= x <= x_max with a free intercept,
/// weighted by (ratio / stderr)^2 when every in-window point has a positive stderr.
/// slope = -1/xi. Nonpositive ratios are dropped with a warning; fewer than 3 usable
/// points throw ArgumentError; a nonnegative slope sets no_decay.
NoiseLengthFit extract_xi(std::span<const RatioPoint> points, double x_min, double x_max);

struct XiTildeOptions {
    double min = 1.0;
    double max = 1e6;
    int seeds = 121;
    double tolerance = 1e-6;
    ScalingFitOptions fit;
    // Relative chi^2/N_dof variation below which the profile counts as flat.
    double flat_threshold = 0.01;
};

struct XiTildeFit {
    double xi_tilde = 0.0;
    double chi2_per_dof = 0.0;
    double uncorrected_chi2_per_dof = 0.0;
    std::vector<std::pair<double, double>> profile;  // (xi_tilde, chi2/N_dof)
    // Profile flat to within flat_threshold, either overall or between the minimum and
    // the largest xi_tilde (the data cannot tell the correction from none).
    bool unidentifiable = false;
    bool at_edge = false;  // minimum on the boundary of the search range
    ScalingFit fit;
};

/// Profiles chi^2/N_dof of the collapse at fixed exponents against xi_tilde and returns
/// the minimizer. Needs at least two distinct drive times.
XiTildeFit fit_xi_tilde(std::span<const DataPoint> points, const RescalingParams &params,
                        const XiTildeOptions &options = {});

}  // namespace kzcrit

#endif
