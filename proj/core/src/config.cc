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

#include "kzcrit/config.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kzcrit/error.h"
#include "kzcrit/noise.h"
#include "kzcrit/state_vector.h"

namespace kzcrit {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kTopKeys = {"schedule", "noise", "measurement", "analysis", "output"};
const std::set<std::string> kScheduleKeys = {"L", "T", "dt", "steps", "order", "t_stop", "pad_depth", "step_time", "transpile"};
const std::set<std::string> kNoiseKeys = {"p", "trajectories", "master_seed", "noisy_preparation"};
const std::set<std::string> kMeasurementKeys = {"shots", "reference", "x_max", "energy", "entropy"};
const std::set<std::string> kAnalysisKeys = {"taylor_order", "decay_mode", "z", "nu", "eta", "nu_grid",
                                             "eta_grid", "bounds_factor", "min_correlation", "collapse_window",
                                             "xi_window", "xi_tilde", "xi_tilde_range", "depth_grid", "input"};
const std::set<std::string> kOutputKeys = {"directory", "threads"};

// Collects every problem instead of stopping at the first one.
class Reader {
   public:
    explicit Reader(std::vector<std::string> &errors) : errors_(errors) {}

    const json *block(const json &root, const std::string &name, const std::set<std::string> &allowed) {
        if (!root.contains(name)) {
            return nullptr;
        }
        const json &b = root.at(name);
        if (!b.is_object()) {
            errors_.push_back(name + ": expected an object");
            return nullptr;
        }
        for (const auto &[k, v] : b.items()) {
            if (!allowed.count(k)) {
                errors_.push_back(name + "." + k + ": unknown key");
            }
        }
        return &b;
    }

    template <typename T>
    void get(const json *b, const std::string &where, const std::string &key, T &out) {
        if (b == nullptr || !b->contains(key)) {
            return;
        }
        try {
            out = b->at(key).get<T>();
        } catch (const json::exception &) {
            errors_.push_back(where + "." + key + ": wrong type (" + std::string(b->at(key).type_name()) + ")");
        }
    }

    // Scalar or list of scalars.
    template <typename T>
    void get_list(const json *b, const std::string &where, const std::string &key, std::vector<T> &out) {
        if (b == nullptr || !b->contains(key)) {
            return;
        }
        const json &v = b->at(key);
        try {
            if (v.is_array()) {
                out = v.get<std::vector<T>>();
            } else {
                out = {v.get<T>()};
            }
        } catch (const json::exception &) {
            errors_.push_back(where + "." + key + ": expected a number or a list of numbers");
        }
    }

    template <typename T>
    void get_optional(const json *b, const std::string &where, const std::string &key, std::optional<T> &out) {
        if (b == nullptr || !b->contains(key) || b->at(key).is_null()) {
            return;
        }
        T v{};
        get(b, where, key, v);
        out = v;
    }

    void get_grid(const json *b, const std::string &where, const std::string &key, GridSpec &out) {
        if (b == nullptr || !b->contains(key)) {
            return;
        }
        const json &g = b->at(key);
        if (!g.is_object()) {
            errors_.push_back(where + "." + key + ": expected {min, max, count}");
            return;
        }
        get(&g, where + "." + key, "min", out.min);
        get(&g, where + "." + key, "max", out.max);
        get(&g, where + "." + key, "count", out.count);
    }

    void get_window(const json *b, const std::string &where, const std::string &key, double &lo, double &hi) {
        if (b == nullptr || !b->contains(key)) {
            return;
        }
        const json &g = b->at(key);
        if (!g.is_object()) {
            errors_.push_back(where + "." + key + ": expected {x_min, x_max}");
            return;
        }
        get(&g, where + "." + key, "x_min", lo);
        get(&g, where + "." + key, "x_max", hi);
    }

   private:
    std::vector<std::string> &errors_;
};

template <typename T>
std::string num(T v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

}  // namespace

KzSchedule RunConfig::schedule(std::uint32_t num_qubits, double drive_time) const {
    const double dt = steps > 0 ? (t_stop + drive_time) / steps : time_step;
    KzSchedule s = KzSchedule::make(num_qubits, drive_time, dt, order, t_stop);
    s.pad_depth = pad_depth;
    s.step_time = step_time;
    return s;
}

std::vector<std::string> RunConfig::violations() const {
    std::vector<std::string> v;
    auto add = [&v](const std::string &m) { v.push_back(m); };

    if (sizes.empty()) {
        add("schedule.L: at least one system size is required");
    }
    if (drive_times.empty()) {
        add("schedule.T: the drive-time list is empty");
    }
    for (const auto L : sizes) {
        if (L < 2 || L > StateVector::kDefaultMaxQubits) {
            add("schedule.L: " + num(L) + " outside [2, " + num(StateVector::kDefaultMaxQubits) + "]");
        }
        const bool needs_reference = !reference.has_value();
        if (needs_reference && L % 2 == 0) {
            add("schedule.L: " + num(L) + " is even; the default center reference qubit needs odd L");
        }
        if (reference && *reference >= L) {
            add("measurement.reference: " + num(*reference) + " outside L=" + num(L));
        }
        const std::uint32_t r = reference.value_or((L - 1) / 2);
        if (x_max && *x_max > std::max(r, L - 1 - r)) {
            add("measurement.x_max: " + num(*x_max) + " leaves the chain at L=" + num(L));
        }
    }
    if (x_max && *x_max < 1) {
        add("measurement.x_max: must be at least 1");
    }
    {
        // Schedule checks do not depend on L beyond its own range; probe with a valid size.
        const std::uint32_t probe = !sizes.empty() && sizes.front() >= 2 ? sizes.front() : 3;
        if (order != 1 && order != 2) {
            add("schedule.order: must be 1 or 2 (got " + num(order) + ")");
        }
        for (const double T : drive_times) {
            if (!(T > 0) || !std::isfinite(T)) {
                add("schedule.T: drive time " + num(T) + " is not positive");
                continue;
            }
            KzSchedule s = schedule(probe, T);
            s.order = 2;  // reported above
            for (const auto &m : s.violations()) {
                add("schedule (T=" + num(T) + "): " + m);
            }
        }
    }
    for (const double p : noise_levels) {
        NoiseSpec n{p, master_seed, trajectories, noisy_preparation};
        for (const auto &m : n.violations()) {
            add("noise.p: " + m);
        }
    }
    if (noise_levels.empty()) {
        add("noise.p: the noise-level list is empty");
    }
    if (trajectories < 1) {
        add("noise.trajectories: must be at least 1");
    }
    bool noisy = false;
    for (const double p : noise_levels) {
        noisy = noisy || p > 0;
    }
    if (shots > 0 && noisy && trajectories > 0 && shots % trajectories != 0) {
        add("measurement.shots: " + num(shots) + " is not a multiple of noise.trajectories=" + num(trajectories));
    }
    if (taylor_order < 0) {
        add("analysis.taylor_order: must be nonnegative");
    }
    for (const auto &m : RescalingParams{nu, z, eta}.violations()) {
        add("analysis: " + m);
    }
    for (const auto &[name, g] : {std::pair{"nu_grid", nu_grid}, std::pair{"eta_grid", eta_grid}}) {
        if (g.count < 1 || !std::isfinite(g.min) || !std::isfinite(g.max) || g.max < g.min) {
            add(std::string("analysis.") + name + ": needs finite min <= max and count >= 1");
        }
    }
    if (!(nu_grid.min > 0)) {
        add("analysis.nu_grid: nu must stay positive");
    }
    if (!(bounds_factor >= 1.0)) {
        add("analysis.bounds_factor: must be at least 1");
    }
    if (!(min_correlation >= 0)) {
        add("analysis.min_correlation: must be nonnegative");
    }
    if (collapse_x_max != 0 && collapse_x_max < collapse_x_min) {
        add("analysis.collapse_window: x_max below x_min");
    }
    if (xi_x_max != 0 && xi_x_max < xi_x_min) {
        add("analysis.xi_window: x_max below x_min");
    }
    if (xi_tilde_mode != "none" && xi_tilde_mode != "fit" && xi_tilde_mode != "value") {
        add("analysis.xi_tilde: expected \"none\", \"fit\" or a positive number");
    }
    if (xi_tilde_mode == "value" && !(xi_tilde_value > 0)) {
        add("analysis.xi_tilde: must be positive");
    }
    if (!(xi_tilde_min > 0) || !(xi_tilde_max > xi_tilde_min)) {
        add("analysis.xi_tilde_range: needs 0 < min < max");
    }
    for (const int d : depth_grid) {
        if (d < 1 || d % 2 == 0) {
            add("analysis.depth_grid: depth " + num(d) + " is not an odd positive integer");
        }
    }
    if (output_dir.empty()) {
        add("output.directory: must not be empty");
    }
    return v;
}

RunConfig config_from_json(const std::string &text, const std::string &base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("not valid JSON: ") + e.what()});
    }
    if (root.is_object() && root.contains("config") && root.contains("config_hash")) {
        root = root.at("config");
    }
    if (!root.is_object()) {
        throw ConfigError({"config must be a JSON object"});
    }
    std::vector<std::string> errors;
    for (const auto &[k, v] : root.items()) {
        if (!kTopKeys.count(k)) {
            errors.push_back(k + ": unknown block");
        }
    }
    Reader rd(errors);
    RunConfig c;

    const json *s = rd.block(root, "schedule", kScheduleKeys);
    if (s == nullptr) {
        errors.push_back("schedule: block is required");
    }
    rd.get_list(s, "schedule", "L", c.sizes);
    rd.get_list(s, "schedule", "T", c.drive_times);
    rd.get(s, "schedule", "dt", c.time_step);
    rd.get(s, "schedule", "steps", c.steps);
    rd.get(s, "schedule", "order", c.order);
    rd.get(s, "schedule", "t_stop", c.t_stop);
    rd.get(s, "schedule", "pad_depth", c.pad_depth);
    rd.get(s, "schedule", "transpile", c.transpile);
    std::string step_time = step_time_name(c.step_time);
    rd.get(s, "schedule", "step_time", step_time);
    try {
        c.step_time = step_time_from_name(step_time);
    } catch (const Error &e) {
        errors.push_back(std::string("schedule.step_time: ") + e.what());
    }

    const json *n = rd.block(root, "noise", kNoiseKeys);
    rd.get_list(n, "noise", "p", c.noise_levels);
    rd.get(n, "noise", "trajectories", c.trajectories);
    rd.get(n, "noise", "master_seed", c.master_seed);
    rd.get(n, "noise", "noisy_preparation", c.noisy_preparation);

    const json *m = rd.block(root, "measurement", kMeasurementKeys);
    rd.get(m, "measurement", "shots", c.shots);
    rd.get_optional(m, "measurement", "reference", c.reference);
    rd.get_optional(m, "measurement", "x_max", c.x_max);
    rd.get(m, "measurement", "energy", c.energy);
    rd.get(m, "measurement", "entropy", c.entropy);

    const json *a = rd.block(root, "analysis", kAnalysisKeys);
    rd.get(a, "analysis", "taylor_order", c.taylor_order);
    std::string decay = decay_mode_name(c.decay);
    rd.get(a, "analysis", "decay_mode", decay);
    try {
        c.decay = decay_mode_from_name(decay);
    } catch (const Error &e) {
        errors.push_back(std::string("analysis.decay_mode: ") + e.what());
    }
    rd.get(a, "analysis", "z", c.z);
    rd.get(a, "analysis", "nu", c.nu);
    rd.get(a, "analysis", "eta", c.eta);
    rd.get_grid(a, "analysis", "nu_grid", c.nu_grid);
    rd.get_grid(a, "analysis", "eta_grid", c.eta_grid);
    rd.get(a, "analysis", "bounds_factor", c.bounds_factor);
    rd.get(a, "analysis", "min_correlation", c.min_correlation);
    rd.get_window(a, "analysis", "collapse_window", c.collapse_x_min, c.collapse_x_max);
    rd.get_window(a, "analysis", "xi_window", c.xi_x_min, c.xi_x_max);
    if (a != nullptr && a->contains("xi_tilde")) {
        const json &x = a->at("xi_tilde");
        if (x.is_number()) {
            c.xi_tilde_mode = "value";
            c.xi_tilde_value = x.get<double>();
        } else if (x.is_string()) {
            c.xi_tilde_mode = x.get<std::string>();
        } else {
            errors.push_back("analysis.xi_tilde: expected \"none\", \"fit\" or a positive number");
        }
    }
    if (a != nullptr && a->contains("xi_tilde_range")) {
        const json *r = &a->at("xi_tilde_range");
        rd.get(r, "analysis.xi_tilde_range", "min", c.xi_tilde_min);
        rd.get(r, "analysis.xi_tilde_range", "max", c.xi_tilde_max);
    }
    rd.get_list(a, "analysis", "depth_grid", c.depth_grid);
    rd.get(a, "analysis", "input", c.input);
    if (!c.input.empty() && !base_dir.empty() && std::filesystem::path(c.input).is_relative()) {
        c.input = (std::filesystem::path(base_dir) / c.input).lexically_normal().string();
    }

    const json *o = rd.block(root, "output", kOutputKeys);
    rd.get(o, "output", "directory", c.output_dir);
    rd.get(o, "output", "threads", c.threads);

    // Fields with parse errors keep their defaults, so this adds no duplicates.
    for (auto &v : c.violations()) {
        errors.push_back(std::move(v));
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return c;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"cannot read config file '" + path + "'"});
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const RunConfig &c) {
    ordered_json j;
    j["schedule"] = {{"L", c.sizes},
                     {"T", c.drive_times},
                     {"dt", c.time_step},
                     {"steps", c.steps},
                     {"order", c.order},
                     {"t_stop", c.t_stop},
                     {"pad_depth", c.pad_depth},
                     {"step_time", step_time_name(c.step_time)},
                     {"transpile", c.transpile}};
    j["noise"] = {{"p", c.noise_levels},
                  {"trajectories", c.trajectories},
                  {"master_seed", c.master_seed},
                  {"noisy_preparation", c.noisy_preparation}};
    ordered_json m = {{"shots", c.shots}};
    m["reference"] = c.reference ? ordered_json(*c.reference) : ordered_json(nullptr);
    m["x_max"] = c.x_max ? ordered_json(*c.x_max) : ordered_json(nullptr);
    m["energy"] = c.energy;
    m["entropy"] = c.entropy;
    j["measurement"] = m;
    ordered_json a;
    a["taylor_order"] = c.taylor_order;
    a["decay_mode"] = decay_mode_name(c.decay);
    a["z"] = c.z;
    a["nu"] = c.nu;
    a["eta"] = c.eta;
    a["nu_grid"] = {{"min", c.nu_grid.min}, {"max", c.nu_grid.max}, {"count", c.nu_grid.count}};
    a["eta_grid"] = {{"min", c.eta_grid.min}, {"max", c.eta_grid.max}, {"count", c.eta_grid.count}};
    a["bounds_factor"] = c.bounds_factor;
    a["min_correlation"] = c.min_correlation;
    a["collapse_window"] = {{"x_min", c.collapse_x_min}, {"x_max", c.collapse_x_max}};
    a["xi_window"] = {{"x_min", c.xi_x_min}, {"x_max", c.xi_x_max}};
    a["xi_tilde"] = c.xi_tilde_mode == "value" ? ordered_json(c.xi_tilde_value) : ordered_json(c.xi_tilde_mode);
    a["xi_tilde_range"] = {{"min", c.xi_tilde_min}, {"max", c.xi_tilde_max}};
    a["depth_grid"] = c.depth_grid;
    a["input"] = c.input;
    j["analysis"] = a;
    j["output"] = {{"directory", c.output_dir}, {"threads", c.threads}};
    return j.dump(2);
}

std::string config_hash(const RunConfig &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : config_to_json(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace kzcrit
