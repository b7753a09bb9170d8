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

#include "noisyboson/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noisyboson {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial_weight(int n, int j, double x) {
    if (j < 0 || j > n) {
        return 0.0;
    }
    if (n <= 60) {
        return binomial(n, j) * std::pow(x, j) * std::pow(1.0 - x, n - j);
    }
    if (x == 0.0) {
        return j == 0 ? 1.0 : 0.0;
    }
    if (x == 1.0) {
        return j == n ? 1.0 : 0.0;
    }
    return std::exp(log_binomial(n, j) + j * std::log(x) + (n - j) * std::log1p(-x));
}

double log_sum_exp(std::span<const double> terms) {
    double hi = -std::numeric_limits<double>::infinity();
    for (double t : terms) {
        hi = std::max(hi, t);
    }
    if (!std::isfinite(hi)) {
        return hi;
    }
    KahanSum acc;
    for (double t : terms) {
        acc.add(std::exp(t - hi));
    }
    return hi + std::log(acc.value());
}

std::vector<SubsetMask> combinations(int n, int k) {
    std::vector<SubsetMask> out;
    if (k < 0 || k > n) {
        return out;
    }
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    const SubsetMask limit = full_mask(n);
    for (SubsetMask m = full_mask(k); m <= limit; m = next_combination(m)) {
        out.push_back(m);
        if (m == (full_mask(k) << (n - k))) {
            break;
        }
    }
    return out;
}

std::vector<std::size_t> mask_indices(SubsetMask mask) {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

void KahanSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        comp_ += (sum_ - t) + v;
    } else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

} // namespace noisyboson
