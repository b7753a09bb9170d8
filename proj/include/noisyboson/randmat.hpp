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

#include <cstddef>

#include "noisyboson/matrix.hpp"
#include "noisyboson/rng.hpp"

namespace noisyboson {

/// i.i.d. standard complex Gaussian entries, E|X_ij|^2 = 1.
/// Entry (r, c) is drawn from the stream derive_seed(derive_seed(seed, r), c),
/// so the matrix is the same for any thread count.
ComplexMatrix sample_gaussian_matrix(std::size_t rows, std::size_t cols, Seed seed,
                                     const Exec& exec = {});

/// Haar-random m x m unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q.
ComplexMatrix sample_haar_unitary(std::size_t m, Seed seed);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const ComplexMatrix& u);

} // namespace noisyboson
