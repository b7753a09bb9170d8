/*
 * Copyright 2026 The noisyboson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace noisyboson {

/// 64-bit seed. Equal seeds and equal shapes give bit-identical draws.
struct Seed {
    std::uint64_t value = 0;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent child seed for a numbered stream (trial, node, matrix entry).
/// Child seeds depend only on (parent, stream), never on scheduling.
constexpr Seed derive_seed(Seed parent, std::uint64_t stream) noexcept {
    return Seed{mix64(parent.value ^ mix64(stream + 0x9E3779B97F4A7C15ULL))};
}

/// splitmix64 stream. Small, splittable and bit-reproducible on every
/// platform, which the standard distributions are not.
class Rng {
  public:
    explicit constexpr Rng(Seed seed) noexcept : state_(seed.value) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_zero() noexcept { return 1.0 - uniform(); }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard complex Gaussian: E z = 0, E|z|^2 = 1 (variance 1/2 per quadrature).
    std::pair<double, double> complex_gaussian() noexcept {
        const double radius = std::sqrt(-std::log(uniform_open_zero()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

  private:
    std::uint64_t state_;
};

/// Worker count handed down from the CLI. Results never depend on it.
struct Exec {
    int threads = 1;
};

} // namespace noisyboson
