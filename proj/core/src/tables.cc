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

#include "kzcrit/tables.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

constexpr const char *kUnits = "# units: T, t in 1/J with hbar = 1; x in lattice sites; value dimensionless";

double parse_double(const std::string &s, std::size_t line) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ArgumentError("line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
    return v;
}

// Non-comment, non-empty lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view csv) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t no = 0;
    while (!csv.empty()) {
        const auto end = csv.find('\n');
        std::string_view line = csv.substr(0, end);
        csv = end == std::string_view::npos ? std::string_view{} : csv.substr(end + 1);
        no++;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        out.emplace_back(no, line);
    }
    return out;
}

std::map<std::string, std::size_t> header_columns(std::string_view header, const std::vector<std::string> &required) {
    std::map<std::string, std::size_t> cols;
    const auto names = split_csv_line(header);
    for (std::size_t i = 0; i < names.size(); i++) {
        cols[names[i]] = i;
    }
    for (const auto &r : required) {
        if (!cols.count(r)) {
            throw ArgumentError("CSV header lacks column '" + r + "'");
        }
    }
    return cols;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        std::string cell(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        while (!cell.empty() && cell.back() == ' ') {
            cell.pop_back();
        }
        while (!cell.empty() && cell.front() == ' ') {
            cell.erase(cell.begin());
        }
        out.push_back(std::move(cell));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string correlations_to_csv(const std::vector<DataPoint> &points, const std::string &comment) {
    std::string s = kUnits;
    s += '\n';
    if (!comment.empty()) {
        s += "# " + comment + "\n";
    }
    s += "T,t,x,value,stderr\n";
    for (const auto &p : points) {
        s += format_double(p.T) + ',' + format_double(p.t) + ',' + format_double(p.x) + ',' + format_double(p.value) +
             ',' + format_double(p.std_error) + '\n';
    }
    return s;
}

std::vector<DataPoint> correlations_from_csv(std::string_view csv) {
    const auto lines = data_lines(csv);
    if (lines.empty()) {
        throw ArgumentError("correlation table is empty");
    }
    const auto cols = header_columns(lines.front().second, {"T", "t", "x", "value", "stderr"});
    std::vector<DataPoint> out;
    for (std::size_t i = 1; i < lines.size(); i++) {
        const auto cells = split_csv_line(lines[i].second);
        if (cells.size() < cols.size()) {
            throw ArgumentError("line " + std::to_string(lines[i].first) + ": too few columns");
        }
        DataPoint p;
        p.T = parse_double(cells[cols.at("T")], lines[i].first);
        p.t = parse_double(cells[cols.at("t")], lines[i].first);
        p.x = parse_double(cells[cols.at("x")], lines[i].first);
        p.value = parse_double(cells[cols.at("value")], lines[i].first);
        p.std_error = parse_double(cells[cols.at("stderr")], lines[i].first);
        out.push_back(p);
    }
    return out;
}

std::string surface_to_csv(const ScanResult &scan) {
    std::string s = "# chi^2 per degree of freedom of the rescaled collapse; nu, eta dimensionless\nnu,eta,chi2_per_dof\n";
    for (const auto &c : scan.cells) {
        s += format_double(c.nu) + ',' + format_double(c.eta) + ',' +
             format_double(c.failed ? std::numeric_limits<double>::quiet_NaN() : c.chi2_per_dof) + '\n';
    }
    return s;
}

ScanResult surface_from_csv(std::string_view csv, double bounds_factor) {
    const auto lines = data_lines(csv);
    if (lines.size() < 2) {
        throw ArgumentError("surface table is empty");
    }
    const auto cols = header_columns(lines.front().second, {"nu", "eta", "chi2_per_dof"});
    ScanResult r;
    r.bounds_factor = bounds_factor;
    std::set<double> nus, etas;
    for (std::size_t i = 1; i < lines.size(); i++) {
        const auto cells = split_csv_line(lines[i].second);
        if (cells.size() < cols.size()) {
            throw ArgumentError("line " + std::to_string(lines[i].first) + ": too few columns");
        }
        ScanCell c{};
        c.nu = parse_double(cells[cols.at("nu")], lines[i].first);
        c.eta = parse_double(cells[cols.at("eta")], lines[i].first);
        c.chi2_per_dof = parse_double(cells[cols.at("chi2_per_dof")], lines[i].first);
        c.failed = !std::isfinite(c.chi2_per_dof);
        nus.insert(c.nu);
        etas.insert(c.eta);
        r.cells.push_back(c);
    }
    r.nu_count = nus.size();
    r.eta_count = etas.size();
    if (r.nu_count * r.eta_count != r.cells.size()) {
        throw ArgumentError("surface table is not a full nu x eta grid");
    }
    r.min_chi2_per_dof = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < r.cells.size(); k++) {
        if (r.cells[k].failed) {
            r.failed_cells++;
        } else if (r.cells[k].chi2_per_dof < r.min_chi2_per_dof) {
            r.min_chi2_per_dof = r.cells[k].chi2_per_dof;
            r.argmin = k;
        }
    }
    return r;
}

}  // namespace kzcrit
