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

#ifndef KZCRIT_SAMPLING_H
#define KZCRIT_SAMPLING_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kzcrit/state_vector.h"

namespace kzcrit {

/// Measurement record: basis-state counts from N shots in the computational basis.
struct SampleSet {
    std::uint32_t num_qubits = 0;
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> count
    std::uint64_t seed = 0;
    std::map<std::string, std::string> provenance;

    /// Adds the counts of another sample set over the same register.
    void merge(const SampleSet &other);
};

/// N i.i.d. shots from |amplitude|^2, deterministic in `seed`.
SampleSet sample(const StateVector &state, std::uint64_t shots, std::uint64_t seed);

/// Qubit 0 first: character q is the value of qubit q.
std::string bitstring(std::uint64_t index, std::uint32_t num_qubits);
/// Inverse of bitstring(); throws ArgumentError on bad characters.
std::uint64_t parse_bitstring(std::string_view bits);

/// Normalized histogram over all 2^L outcomes.
std::vector<double> empirical_distribution(const SampleSet &samples);

/// CSV with header `bitstring,count`, one row per observed outcome.
std::string samples_to_csv(const SampleSet &samples);
SampleSet samples_from_csv(std::string_view csv);

}  // namespace kzcrit

#endif
