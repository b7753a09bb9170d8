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

#include "noisyboson/matrix.hpp"
#include "noisyboson/rng.hpp"

namespace noisyboson {

enum class PermanentKernel { ryser, glynn };

/// Largest order the exponential kernels accept.
inline constexpr std::size_t kMaxPermanentOrder = 30;

/// Largest order permanent_naive accepts (n! terms).
inline constexpr std::size_t kMaxNaiveOrder = 9;

/// Per(M) in O(n 2^n). The 0x0 matrix has permanent 1.
///
/// Ryser's formula walks the subsets in Gray-code order so each step touches a
/// single column. The sequence is split into a chunk count that depends only on
/// n, so the result is bitwise identical for any number of worker threads.
Complex permanent_complex(const ComplexMatrix& m, PermanentKernel kernel = PermanentKernel::ryser,
                          const Exec& exec = {});

/// Per(M) for entrywise nonnegative M, same kernel in real arithmetic.
/// Rounding residue below zero is clamped; anything larger is a NumericalError.
double permanent_nonneg(const RealMatrix& m, const Exec& exec = {});

/// Sum over all n! permutations. Test oracle; refuses n > 9.
Complex permanent_naive(const ComplexMatrix& m);

// Kernels exposed for cross-checks and benchmarks.

/// Gray-code Ryser split into `chunks` contiguous pieces with per-chunk re-initialization.
Complex permanent_ryser(const ComplexMatrix& m, std::size_t chunks, const Exec& exec = {});
double permanent_ryser(const RealMatrix& m, std::size_t chunks, const Exec& exec = {});

/// Single sequential Gray-code pass, no OpenMP.
Complex permanent_ryser_serial(const ComplexMatrix& m);
double permanent_ryser_serial(const RealMatrix& m);

/// Glynn's formula with Gray-code sign flips.
Complex permanent_glynn(const ComplexMatrix& m);

/// Chunk count used by permanent_complex / permanent_nonneg for order n.
std::size_t default_permanent_chunks(std::size_t n) noexcept;

} // namespace noisyboson
