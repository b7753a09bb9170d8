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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace noisyboson {

using SubsetMask = std::uint32_t;

double log_factorial(int n);
double factorial(int n);

/// C(n, k); 0 outside 0 <= k <= n.
double binomial(int n, int k);
double log_binomial(int n, int k);

/// C(n, j) x^j (1-x)^(n-j), with 0^0 = 1 at the endpoints.
double binomial_weight(int n, int j, double x);

/// ln sum_i exp(terms_i), stable for large negative entries.
double log_sum_exp(std::span<const double> terms);

/// Next mask with the same popcount in increasing numeric order (Gosper).
constexpr SubsetMask next_combination(SubsetMask v) noexcept {
    const SubsetMask t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

/// All k-subsets of {0..n-1} as bitmasks, ascending.
std::vector<SubsetMask> combinations(int n, int k);

/// Members of the mask, ascending.
std::vector<std::size_t> mask_indices(SubsetMask mask);

constexpr SubsetMask full_mask(int n) noexcept {
    return n >= 32 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1;
}

/// Compensated (Kahan-Babuska) summation.
class KahanSum {
  public:
    void add(double v) noexcept;
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace noisyboson
