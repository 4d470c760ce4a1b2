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

#include "kzcrit/circuit_io.h"

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kzcrit/error.h"

namespace kzcrit {

namespace {

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string gate_line(const Gate &g) {
    std::string line(gate_name(g.kind));
    line += ' ';
    line += std::to_string(g.qubits[0]);
    if (is_two_qubit(g.kind)) {
        line += ' ';
        line += std::to_string(g.qubits[1]);
    }
    if (has_angle(g.kind)) {
        line += ' ';
        line += format_angle(g.angle);
    }
    return line;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            i++;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            j++;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::uint32_t parse_qubit(std::string_view tok, std::size_t line_no) {
    std::uint32_t q = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ArgumentError("line " + std::to_string(line_no) + ": bad qubit index '" +
                            std::string(tok) + "'");
    }
    return q;
}

double parse_angle(std::string_view tok, std::size_t line_no) {
    std::string s(tok);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw ArgumentError("line " + std::to_string(line_no) + ": bad angle '" + s + "'");
    }
    return v;
}

}  // namespace

std::string circuit_to_text(const Circuit &c) {
    std::string out = "# num_qubits=" + std::to_string(c.num_qubits()) + "\n";
    for (const auto &[k, v] : c.metadata()) {
        if (k == "num_qubits") {
            continue;
        }
        out += "# " + k + "=" + v + "\n";
    }
    for (const Gate &g : c.gates()) {
        out += gate_line(g);
        out += '\n';
    }
    return out;
}

Circuit circuit_from_text(std::string_view text) {
    std::optional<Circuit> circuit;
    Circuit::Metadata metadata;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        line_no++;
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::string_view body = trim(line.substr(1));
            auto eq = body.find('=');
            if (eq == std::string_view::npos) {
                continue;
            }
            std::string key(trim(body.substr(0, eq)));
            std::string value(trim(body.substr(eq + 1)));
            if (key == "num_qubits") {
                if (circuit) {
                    throw ArgumentError("line " + std::to_string(line_no) + ": num_qubits given twice");
                }
                circuit.emplace(parse_qubit(value, line_no));
            } else {
                metadata[key] = value;
            }
            continue;
        }
        if (!circuit) {
            throw ArgumentError("line " + std::to_string(line_no) + ": gate before '# num_qubits=' header");
        }
        auto toks = split_ws(line);
        GateKind kind = gate_kind_from_name(toks[0]);
        std::size_t expected = 2 + (is_two_qubit(kind) ? 1 : 0) + (has_angle(kind) ? 1 : 0);
        if (toks.size() != expected) {
            throw ArgumentError("line " + std::to_string(line_no) + ": " + std::string(toks[0]) +
                                " expects " + std::to_string(expected - 1) + " operands");
        }
        std::uint32_t q0 = parse_qubit(toks[1], line_no);
        std::uint32_t q1 = is_two_qubit(kind) ? parse_qubit(toks[2], line_no) : q0;
        double angle = has_angle(kind) ? parse_angle(toks.back(), line_no) : 0.0;
        circuit->append(Gate::make(kind, q0, q1, angle));
    }
    if (!circuit) {
        throw ArgumentError("circuit text has no '# num_qubits=' header");
    }
    for (const auto &[k, v] : metadata) {
        circuit->set_metadata(k, v);
    }
    return std::move(*circuit);
}

std::uint64_t circuit_hash(const Circuit &c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    feed(std::to_string(c.num_qubits()));
    feed("\n");
    for (const Gate &g : c.gates()) {
        feed(gate_line(g));
        feed("\n");
    }
    return h;
}

}  // namespace kzcrit
