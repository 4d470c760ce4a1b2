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

#ifndef KZCRIT_RNG_H
#define KZCRIT_RNG_H

#include <cstdint>

namespace kzcrit {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stateless counter-based stream: the n-th draw depends only on (key, n), so any
/// draw can be reproduced without replaying the ones before it.
class CounterRng {
   public:
    constexpr explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// Key for sub-stream `id` of a parent key (e.g. trajectory id under a master seed).
    static constexpr std::uint64_t derive(std::uint64_t parent, std::uint64_t id) {
        return mix64(mix64(parent) ^ mix64(id + 0x632be59bd9b4e019ULL));
    }

    constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t key() const { return key_; }

   private:
    std::uint64_t key_;
};

}  // namespace kzcrit

#endif
