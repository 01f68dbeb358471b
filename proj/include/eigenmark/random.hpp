// Copyright 2026 The eigenmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * SplitMix64 (Steele, Lea & Flood 2014): the single pinned generator used
 * for shot sampling and per-job seed derivation. Output is defined bit for
 * bit, so sampled counts are identical on every platform.
 */
#pragma once

#include <cstdint>
#include <limits>

namespace eigenmark {

class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_unit() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// The SplitMix64 finalizer; a bijection on 64-bit words.
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  private:
    std::uint64_t state_;
};

} // namespace eigenmark
