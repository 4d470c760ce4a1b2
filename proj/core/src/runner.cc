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

#include "kzcrit/runner.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kzcrit/circuit_io.h"
#include "kzcrit/ensemble.h"
#include "kzcrit/error.h"
#include "kzcrit/observables.h"
#include "kzcrit/rng.h"
#include "kzcrit/sampling.h"
#include "kzcrit/tables.h"
#include "kzcrit/transpile.h"
#include "kzcrit/xi_experiment.h"

#ifndef KZCRIT_VERSION
#define KZCRIT_VERSION "unknown"
#endif

namespace kzcrit {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Collects outputs of one command; every file goes through a temporary and a rename.
class OutputSet {
   public:
    explicit OutputSet(std::string dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string &name, const std::string &content) {
        const fs::path target = fs::path(dir_) / name;
        fs::create_directories(target.parent_path());
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw Error("cannot write '" + tmp.string() + "'");
            }
            out << content;
            if (!out.flush()) {
                throw Error("short write to '" + tmp.string() + "'");
            }
        }
        fs::rename(tmp, target);
        names_.push_back(name);
    }

    const std::string &dir() const { return dir_; }
    const std::vector<std::string> &names() const { return names_; }

   private:
    std::string dir_;
    std::vector<std::string> names_;
};

// File-name friendly number: 0.001 -> "0.001", 1e-05 -> "1e-05".
std::string tag(double v) { return format_double(v); }

std::uint32_t reference_for(const RunConfig &cfg, std::uint32_t L) {
    return cfg.reference ? *cfg.reference : reference_qubit(L);
}

std::uint32_t x_max_for(const RunConfig &cfg, std::uint32_t L) {
    if (cfg.x_max) {
        return *cfg.x_max;
    }
    const std::uint32_t r = reference_for(cfg, L);
    return std::max(r, L - 1 - r);
}

// Drive circuit of one point. Transpiling keeps the preparation layer separate so that
// "prep_gates" still counts exactly the gates of the preparation.
Circuit make_circuit(const RunConfig &cfg, const KzSchedule &schedule) {
    Circuit drive = build_drive(schedule);
    if (!cfg.transpile) {
        return drive;
    }
    const std::size_t prep = std::stoull(drive.metadata_value("prep_gates"));
    Circuit head(drive.num_qubits());
    Circuit tail(drive.num_qubits());
    for (std::size_t i = 0; i < drive.gate_count(); i++) {
        (i < prep ? head : tail).append(drive[i]);
    }
    Circuit out = transpile_native(head);
    out.append(transpile_native(tail));
    for (const auto &[k, v] : drive.metadata()) {
        out.set_metadata(k, v);
    }
    out.set_metadata("native", "1");
    out.set_metadata("prep_gates", std::to_string(transpile_native(head).gate_count()));
    return out;
}

NoiseSpec noise_for(const RunConfig &cfg, double p) {
    NoiseSpec n;
    n.p = p;
    n.master_seed = cfg.master_seed;
    n.trajectories = p > 0 ? cfg.trajectories : 1;
    n.noisy_preparation = cfg.noisy_preparation;
    return n;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct PointOutput {
    std::vector<DataPoint> correlations;
    std::vector<std::pair<std::string, ObservableEstimate>> observables;
    std::optional<SampleSet> samples;
    ordered_json trajectory_manifest;
};

PointOutput simulate_point(const RunConfig &cfg, std::uint32_t L, double T, double p) {
    const KzSchedule schedule = cfg.schedule(L, T);
    const Circuit circuit = make_circuit(cfg, schedule);
    const NoiseSpec noise = noise_for(cfg, p);
    const std::uint32_t r = reference_for(cfg, L);
    const std::uint32_t xm = x_max_for(cfg, L);
    const std::uint64_t chash = circuit_hash(circuit);

    EnsembleOptions eo;
    eo.threads = cfg.threads;

    PointOutput out;
    out.trajectory_manifest = {{"L", L},
                               {"T", T},
                               {"master_seed", noise.master_seed},
                               {"p", p},
                               {"M", noise.trajectories},
                               {"circuit_hash", hex64(chash)},
                               {"gates", circuit.gate_count()}};
    if (cfg.shots == 0) {
        std::vector<Observable> obs = correlation_observables(L, r, xm);
        if (cfg.energy) {
            obs.push_back({"energy", [schedule](const StateVector &s) { return energy(s, schedule, schedule.t_stop); }});
        }
        if (cfg.entropy) {
            obs.push_back({"entropy", [L](const StateVector &s) { return entanglement_entropy(s, L / 2); }});
        }
        const EnsembleResult res = run_ensemble(circuit, noise, obs, eo);
        for (std::uint32_t x = 1; x <= xm; x++) {
            out.correlations.push_back({T, schedule.t_stop, static_cast<double>(x), res.mean[x - 1], res.std_error[x - 1]});
        }
        for (std::size_t k = xm; k < obs.size(); k++) {
            out.observables.emplace_back(obs[k].name, ObservableEstimate{res.mean[k], res.std_error[k], false});
        }
        out.trajectory_manifest["mean_insertions"] = res.mean_insertions;
        return out;
    }

    SampleSet samples;
    if (p > 0) {
        samples = run_sampled_ensemble(circuit, noise, cfg.shots / noise.trajectories, eo);
    } else {
        StateVector s(L);
        s.apply(circuit);
        const std::uint64_t seed = CounterRng::derive(cfg.master_seed, chash ^ std::bit_cast<std::uint64_t>(p));
        samples = sample(s, cfg.shots, seed);
        samples.provenance = circuit.metadata();
    }
    samples.provenance["circuit_hash"] = hex64(chash);
    for (std::uint32_t x = 1; x <= xm; x++) {
        const auto e = correlation_sampled(samples, r, x);
        out.correlations.push_back({T, schedule.t_stop, static_cast<double>(x), e.value, e.std_error});
    }
    out.samples = std::move(samples);
    return out;
}

// run and sweep share everything except the set of sizes.
void simulate(const RunConfig &cfg, const std::vector<std::uint32_t> &sizes, bool size_in_names, OutputSet &out,
              ordered_json &manifest) {
    std::string observables_csv =
        "# units: T, t in 1/J with hbar = 1; energy in units of J; entropy in nats\n"
        "L,T,t,p,observable,value,stderr\n";
    bool any_observable = false;
    for (const auto L : sizes) {
        for (const double p : cfg.noise_levels) {
            std::vector<DataPoint> table;
            for (const double T : cfg.drive_times) {
                PointOutput po = simulate_point(cfg, L, T, p);
                table.insert(table.end(), po.correlations.begin(), po.correlations.end());
                for (const auto &[name, e] : po.observables) {
                    any_observable = true;
                    observables_csv += std::to_string(L) + ',' + format_double(T) + ',' + format_double(cfg.t_stop) +
                                       ',' + format_double(p) + ',' + name + ',' + format_double(e.value) + ',' +
                                       format_double(e.std_error) + '\n';
                }
                if (po.samples) {
                    out.write("samples/L" + std::to_string(L) + "_T" + tag(T) + "_p" + tag(p) + ".csv",
                              samples_to_csv(*po.samples));
                }
                manifest["trajectory_manifests"].push_back(po.trajectory_manifest);
            }
            const std::string name = std::string("correlations_") + (size_in_names ? "L" + std::to_string(L) + "_" : "") +
                                     "p" + tag(p) + ".csv";
            const std::uint32_t r = reference_for(cfg, L);
            out.write(name, correlations_to_csv(table, "L=" + std::to_string(L) + " p=" + format_double(p) +
                                                           " reference=" + std::to_string(r) +
                                                           (cfg.shots ? " shots=" + std::to_string(cfg.shots)
                                                                      : std::string(" exact"))));
        }
    }
    if (any_observable) {
        out.write("observables.csv", observables_csv);
    }
}

void cmd_build(const RunConfig &cfg, OutputSet &out, ordered_json &) {
    std::string index = "# one row per emitted circuit; T in 1/J\nfile,L,T,gates,depth,hash\n";
    for (const auto L : cfg.sizes) {
        for (const double T : cfg.drive_times) {
            const Circuit c = make_circuit(cfg, cfg.schedule(L, T));
            const std::string name = "circuits/L" + std::to_string(L) + "_T" + tag(T) + ".circuit";
            out.write(name, circuit_to_text(c));
            index += name + ',' + std::to_string(L) + ',' + format_double(T) + ',' + std::to_string(c.gate_count()) +
                     ',' + std::to_string(c.depth()) + ',' + hex64(circuit_hash(c)) + '\n';
        }
    }
    out.write("circuits.csv", index);
}

std::vector<DataPoint> read_file_points(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"analysis.input: cannot read '" + path + "'"});
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return correlations_from_csv(ss.str());
}

// Collapse input: the given table or exact data for the first size and noise level, then
// restricted to the configured window.
std::vector<DataPoint> collapse_points(const RunConfig &cfg, ordered_json &report, ordered_json &manifest) {
    std::vector<DataPoint> raw;
    if (!cfg.input.empty()) {
        raw = read_file_points(cfg.input);
        report["input"] = cfg.input;
    } else {
        for (const double T : cfg.drive_times) {
            PointOutput po = simulate_point(cfg, cfg.sizes.front(), T, cfg.noise_levels.front());
            raw.insert(raw.end(), po.correlations.begin(), po.correlations.end());
            manifest["trajectory_manifests"].push_back(po.trajectory_manifest);
        }
        report["input"] = "simulated";
    }
    std::vector<DataPoint> pts;
    std::size_t dropped_small = 0;
    for (const auto &p : raw) {
        if (p.x < cfg.collapse_x_min || (cfg.collapse_x_max > 0 && p.x > cfg.collapse_x_max)) {
            continue;
        }
        if (std::abs(p.value) < cfg.min_correlation) {
            dropped_small++;
            continue;
        }
        pts.push_back(p);
    }
    report["window"] = {{"x_min", cfg.collapse_x_min},
                        {"x_max", cfg.collapse_x_max},
                        {"min_correlation", cfg.min_correlation},
                        {"points_used", pts.size()},
                        {"points_below_cutoff", dropped_small}};
    return pts;
}

ScalingFitOptions fit_options(const RunConfig &cfg) {
    ScalingFitOptions o;
    o.order = cfg.taylor_order;
    o.decay = cfg.decay;
    return o;
}

ordered_json fit_json(const ScalingFit &f) {
    return {{"taylor_order", f.order}, {"coefficients", f.coefficients}, {"decay", f.decay},
            {"decay_free", f.decay_free}, {"chi2", f.chi2},           {"dof", f.dof},
            {"chi2_per_dof", f.chi2_per_dof()}};
}

// JSON has no infinity; report it as null.
ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

void cmd_collapse(const RunConfig &cfg, OutputSet &out, ordered_json &manifest) {
    ordered_json report;
    const auto pts = collapse_points(cfg, report, manifest);
    const RescalingParams params{cfg.nu, cfg.z, cfg.eta};
    report["exponents"] = {{"nu", cfg.nu},
                           {"z", cfg.z},
                           {"eta", cfg.eta},
                           {"length_exponent", params.length_exponent()},
                           {"prefactor_exponent", params.prefactor_exponent()}};
    std::optional<double> xi_tilde;
    if (cfg.xi_tilde_mode == "value") {
        xi_tilde = cfg.xi_tilde_value;
    } else if (cfg.xi_tilde_mode == "fit") {
        XiTildeOptions xo;
        xo.min = cfg.xi_tilde_min;
        xo.max = cfg.xi_tilde_max;
        xo.fit = fit_options(cfg);
        const XiTildeFit xf = fit_xi_tilde(pts, params, xo);
        xi_tilde = xf.xi_tilde;
        ordered_json prof = ordered_json::array();
        std::string csv = "# chi^2/N_dof of the collapse against xi_tilde (sites x 1/J)\nxi_tilde,chi2_per_dof\n";
        for (const auto &[x, v] : xf.profile) {
            prof.push_back({x, finite_or_null(v)});
            csv += format_double(x) + ',' + format_double(v) + '\n';
        }
        out.write("xi_tilde_profile.csv", csv);
        report["xi_tilde_fit"] = {{"xi_tilde", xf.xi_tilde},
                                  {"chi2_per_dof", xf.chi2_per_dof},
                                  {"uncorrected_chi2_per_dof", finite_or_null(xf.uncorrected_chi2_per_dof)},
                                  {"unidentifiable", xf.unidentifiable},
                                  {"at_edge", xf.at_edge},
                                  {"range", {xo.min, xo.max}}};
    }
    const auto scaled = rescale(pts, params, xi_tilde);
    const ScalingFit fit = fit_scaling_function(scaled, fit_options(cfg));
    report["xi_tilde"] = xi_tilde ? ordered_json(*xi_tilde) : ordered_json(nullptr);
    report["fit"] = fit_json(fit);
    std::string csv = "# rescaled collapse: X = x T^-a, Y = C T^b (times exp(xT/xi_tilde) when corrected)\n"
                      "T,x,X,Y,dY,fit\n";
    for (std::size_t i = 0; i < pts.size(); i++) {
        csv += format_double(pts[i].T) + ',' + format_double(pts[i].x) + ',' + format_double(scaled[i].X) + ',' +
               format_double(scaled[i].Y) + ',' + format_double(scaled[i].dY) + ',' + format_double(fit(scaled[i].X)) +
               '\n';
    }
    out.write("collapse.csv", csv);
    out.write("report.json", report.dump(2) + "\n");
}

void cmd_scan(const RunConfig &cfg, OutputSet &out, ordered_json &manifest) {
    ordered_json report;
    const auto pts = collapse_points(cfg, report, manifest);
    ScanOptions so;
    so.nu_grid = cfg.nu_grid.values();
    so.eta_grid = cfg.eta_grid.values();
    so.z = cfg.z;
    so.fit = fit_options(cfg);
    so.bounds_factor = cfg.bounds_factor;
    so.threads = cfg.threads;
    if (cfg.xi_tilde_mode == "value") {
        so.xi_tilde = cfg.xi_tilde_value;
    }
    const ScanResult scan = exponent_scan(pts, so);
    out.write("surface.csv", surface_to_csv(scan));
    double nu_lo = std::numeric_limits<double>::infinity(), nu_hi = -nu_lo, eta_lo = nu_lo, eta_hi = -nu_lo;
    for (std::size_t k = 0; k < scan.cells.size(); k++) {
        if (scan.in_bounds(k)) {
            nu_lo = std::min(nu_lo, scan.cells[k].nu);
            nu_hi = std::max(nu_hi, scan.cells[k].nu);
            eta_lo = std::min(eta_lo, scan.cells[k].eta);
            eta_hi = std::max(eta_hi, scan.cells[k].eta);
        }
    }
    report["argmin"] = {{"nu", scan.best().nu}, {"eta", scan.best().eta}, {"chi2_per_dof", scan.min_chi2_per_dof}};
    report["bounds"] = {{"factor", scan.bounds_factor},
                        {"cells", scan.region_size()},
                        {"nu", {nu_lo, nu_hi}},
                        {"eta", {eta_lo, eta_hi}},
                        {"contains_reference", scan.region_contains(cfg.nu, cfg.eta)},
                        {"reference", {cfg.nu, cfg.eta}},
                        {"reference_chi2_per_dof", scan.value_near(cfg.nu, cfg.eta)}};
    report["failed_cells"] = scan.failed_cells;
    report["fit"] = {{"taylor_order", cfg.taylor_order}, {"decay_mode", decay_mode_name(cfg.decay)}};
    out.write("report.json", report.dump(2) + "\n");
}

void cmd_xi(const RunConfig &cfg, OutputSet &out, ordered_json &manifest) {
    const std::uint32_t L = cfg.sizes.front();
    XiExperimentOptions xo;
    xo.reference = reference_for(cfg, L);
    xo.x_max = x_max_for(cfg, L);
    xo.cutoff = cfg.min_correlation;
    xo.ensemble.threads = cfg.threads;
    const double x_hi = cfg.xi_x_max > 0 ? cfg.xi_x_max : static_cast<double>(xo.x_max);

    ordered_json report;
    report["window"] = {{"x_min", cfg.xi_x_min}, {"x_max", x_hi}, {"cutoff", cfg.min_correlation}};
    std::string csv = "# ratio C(x, g)/C(x, 0) at the reference qubit; g is p or the padding depth d\n"
                      "T,grid,x,correlation,correlation_err,reference,ratio,stderr,excluded\n";
    for (const double T : cfg.drive_times) {
        const KzSchedule schedule = cfg.schedule(L, T);
        NoiseSpec base = noise_for(cfg, cfg.noise_levels.front());
        base.trajectories = cfg.trajectories;
        XiTable table;
        if (cfg.depth_grid.empty()) {
            table = xi_experiment_p(schedule, cfg.noise_levels, base, xo);
        } else {
            table = xi_experiment_d(schedule, cfg.depth_grid, base, xo);
        }
        report["grid"] = table.grid_name;
        for (const auto &row : table.rows) {
            csv += format_double(T) + ',' + format_double(row.grid_value) + ',' + std::to_string(row.x) + ',' +
                   format_double(row.correlation) + ',' + format_double(row.correlation_err) + ',' +
                   format_double(row.reference) + ',' + format_double(row.ratio) + ',' + format_double(row.ratio_err) +
                   ',' + (row.excluded ? "1" : "0") + '\n';
        }
        ordered_json fits = ordered_json::array();
        std::vector<double> gs, xis;
        for (const double g : table.grid) {
            ordered_json fj = {{table.grid_name, g}};
            try {
                const NoiseLengthFit f = extract_xi(table.ratios(g), cfg.xi_x_min, x_hi);
                fj["xi"] = finite_or_null(f.xi);
                fj["xi_err"] = finite_or_null(f.xi_err);
                fj["xi_tilde"] = finite_or_null(f.xi_tilde(T));
                fj["slope"] = f.slope;
                fj["slope_err"] = f.slope_err;
                fj["intercept"] = f.intercept;
                fj["points"] = f.used_points;
                fj["no_decay"] = f.no_decay;
                fj["warnings"] = f.warnings;
                if (!f.no_decay && g > 0) {
                    gs.push_back(g);
                    xis.push_back(f.xi);
                }
            } catch (const ArgumentError &e) {
                fj["error"] = e.what();
            }
            fits.push_back(fj);
        }
        ordered_json entry = {{"T", T}, {"fits", fits}};
        if (gs.size() >= 2) {
            const LinearFit lf = loglog_fit(gs, xis);
            entry["loglog_slope"] = lf.slope;
            entry["loglog_slope_err"] = lf.slope_err;
            entry["loglog_r_squared"] = lf.r_squared;
        }
        report["drive_times"].push_back(entry);
        const std::uint64_t M = cfg.trajectories;
        KzSchedule unpadded = schedule;
        unpadded.pad_depth = 0;
        for (const double g : table.grid) {
            manifest["trajectory_manifests"].push_back(
                {{"L", L},
                 {"T", T},
                 {"master_seed", cfg.master_seed},
                 {"p", table.grid_name == "p" ? g : base.p},
                 {"M", M},
                 {"pad_depth", table.grid_name == "d" ? static_cast<int>(g) : cfg.pad_depth},
                 {"circuit_hash", hex64(circuit_hash(table.grid_name == "d"
                                                         ? pad_depth(build_drive(unpadded), unpadded, static_cast<int>(g))
                                                         : build_drive(schedule)))}});
        }
    }
    out.write("ratios.csv", csv);
    out.write("report.json", report.dump(2) + "\n");
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::kBuild:
            return "build";
        case Command::kRun:
            return "run";
        case Command::kSweep:
            return "sweep";
        case Command::kCollapse:
            return "collapse";
        case Command::kScan:
            return "scan";
        case Command::kXi:
            return "xi";
    }
    return "?";
}

Command command_from_name(const std::string &name) {
    for (const Command c : {Command::kBuild, Command::kRun, Command::kSweep, Command::kCollapse, Command::kScan,
                            Command::kXi}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    throw ArgumentError("unknown command '" + name + "'");
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e) != nullptr) {
        return kExitConfigError;
    }
    if (dynamic_cast<const NumericError *>(&e) != nullptr || dynamic_cast<const RankDeficiencyError *>(&e) != nullptr) {
        return kExitNumericError;
    }
    return kExitFailure;
}

RunSummary run_command(Command command, const RunConfig &config) {
    if (auto v = config.violations(); !v.empty()) {
        throw ConfigError(std::move(v));
    }
    if (command == Command::kRun && config.sizes.size() != 1) {
        throw ConfigError({"schedule.L: `run` takes a single system size; use `sweep` for several"});
    }
    const auto start = std::chrono::steady_clock::now();
    OutputSet out(config.output_dir);
    ordered_json manifest;
    manifest["tool"] = "kzcrit";
    manifest["version"] = KZCRIT_VERSION;
    manifest["command"] = command_name(command);
    manifest["config_hash"] = config_hash(config);
    manifest["config"] = ordered_json::parse(config_to_json(config));
    manifest["seeds"] = {{"master_seed", config.master_seed}};
    manifest["trajectory_manifests"] = ordered_json::array();

    switch (command) {
        case Command::kBuild:
            cmd_build(config, out, manifest);
            break;
        case Command::kRun:
        case Command::kSweep:
            simulate(config, config.sizes, command == Command::kSweep, out, manifest);
            break;
        case Command::kCollapse:
            cmd_collapse(config, out, manifest);
            break;
        case Command::kScan:
            cmd_scan(config, out, manifest);
            break;
        case Command::kXi:
            cmd_xi(config, out, manifest);
            break;
    }

    RunSummary summary;
    summary.output_dir = out.dir();
    summary.outputs = out.names();
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["outputs"] = summary.outputs;
    manifest["wall_time_seconds"] = summary.wall_seconds;
    out.write("manifest.json", manifest.dump(2) + "\n");
    summary.manifest_path = (fs::path(out.dir()) / "manifest.json").string();
    return summary;
}

}  // namespace kzcrit
