/*
 * Copyright 2026 The embias Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace embias {

/// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
/// <random> engines so that a fixed seed yields the same stream on every
/// platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased integer in [0, bound). bound must be > 0.
    uint64_t next_below(uint64_t bound);

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform float in [0, 1).
    float next_float() { return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f; }

    /// Standard normal deviate (Box-Muller; caches the second value).
    double next_gaussian();

    /// Poisson deviate, Knuth's method (intended for small lambda).
    uint32_t next_poisson(double lambda);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices drawn from [0, n), in draw order.
    std::vector<size_t> sample_indices(size_t n, size_t k);

private:
    uint64_t state_;
    bool have_gauss_ = false;
    double gauss_ = 0.0;
};

uint64_t fnv1a64(std::string_view s);

/// Independent, reproducible seed for a named sub-task of a master seed.
/// Equal (master, tag) pairs always yield the same seed.
uint64_t derive_seed(uint64_t master, std::string_view tag);

}  // namespace embias
