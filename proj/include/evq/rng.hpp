// Copyright 2026 The evq contributors.
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
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace evq {

/**
 * SplitMix64 counter stream. Every sampling interface takes an explicit
 * (seed, stream) pair; distinct streams are statistically independent and
 * the output sequence is bit-exact across platforms.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed, uint64_t stream = 0) {
        state_ = mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
        state_ = mix(state_ ^ (stream * 0xbf58476d1ce4e5b9ULL));
    }

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Index i in [0, n) uniformly.
    uint64_t below(uint64_t n) { return next() % n; }

    /// Samples an index from a cumulative probability table (last entry ~1).
    std::size_t categorical(std::span<const double> cumulative) {
        const double u = uniform();
        std::size_t lo = 0, hi = cumulative.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= u) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        return lo < cumulative.size() ? lo : cumulative.size() - 1;
    }

  private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace evq
