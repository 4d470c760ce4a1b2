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

#include "kzcrit/sampling.h"

#include <algorithm>
#include <sstream>

#include "kzcrit/error.h"
#include "kzcrit/rng.h"

namespace kzcrit {

void SampleSet::merge(const SampleSet &other) {
    if (other.num_qubits != num_qubits) {
        throw ArgumentError("cannot merge sample sets over different registers");
    }
    for (const auto &[k, n] : other.counts) {
        counts[k] += n;
    }
    shots += other.shots;
}

SampleSet sample(const StateVector &state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ArgumentError("sample needs at least one shot");
    }
    auto amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0;
    for (std::size_t i = 0; i < amps.size(); i++) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    SampleSet out;
    out.num_qubits = state.num_qubits();
    out.shots = shots;
    out.seed = seed;
    const CounterRng rng(seed);
    for (std::uint64_t n = 0; n < shots; n++) {
        const double u = rng.uniform(n) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= cdf.size()) {
            // u rounded up to the total; take the last outcome with nonzero weight.
            idx = cdf.size() - 1;
            while (idx > 0 && std::norm(amps[idx]) == 0.0) {
                idx--;
            }
        }
        out.counts[idx]++;
    }
    return out;
}

std::string bitstring(std::uint64_t index, std::uint32_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::uint32_t q = 0; q < num_qubits; q++) {
        if ((index >> q) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

std::uint64_t parse_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > 64) {
        throw ArgumentError("bad bitstring length " + std::to_string(bits.size()));
    }
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); q++) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw ArgumentError("bad bitstring '" + std::string(bits) + "'");
        }
    }
    return index;
}

std::vector<double> empirical_distribution(const SampleSet &samples) {
    std::vector<double> p(std::uint64_t{1} << samples.num_qubits, 0.0);
    for (const auto &[k, n] : samples.counts) {
        p[k] = static_cast<double>(n) / static_cast<double>(samples.shots);
    }
    return p;
}

std::string samples_to_csv(const SampleSet &samples) {
    std::ostringstream os;
    os << "# qubit 0 is the first character; seed=" << samples.seed << " shots=" << samples.shots << "\n";
    os << "bitstring,count\n";
    for (const auto &[k, n] : samples.counts) {
        os << bitstring(k, samples.num_qubits) << "," << n << "\n";
    }
    return os.str();
}

SampleSet samples_from_csv(std::string_view csv) {
    SampleSet out;
    std::istringstream is{std::string(csv)};
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != "bitstring,count") {
                throw ArgumentError("expected header 'bitstring,count', got '" + line + "'");
            }
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ArgumentError("bad sample row '" + line + "'");
        }
        std::string bits = line.substr(0, comma);
        std::uint64_t n = std::stoull(line.substr(comma + 1));
        if (out.num_qubits == 0) {
            out.num_qubits = static_cast<std::uint32_t>(bits.size());
        } else if (bits.size() != out.num_qubits) {
            throw ArgumentError("inconsistent bitstring length in '" + line + "'");
        }
        out.counts[parse_bitstring(bits)] += n;
        out.shots += n;
    }
    return out;
}

}  // namespace kzcrit
