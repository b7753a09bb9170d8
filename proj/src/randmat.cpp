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

#include "noisyboson/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisyboson {

ComplexMatrix sample_gaussian_matrix(std::size_t rows, std::size_t cols, Seed seed,
                                     const Exec& exec) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("sample_gaussian_matrix: dimensions must be >= 1");
    }
    ComplexMatrix out(rows, cols);
    const auto n_rows = static_cast<std::int64_t>(rows);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(std::max(1, exec.threads)) if (exec.threads > 1 && rows * cols > 4096)
#endif
    for (std::int64_t r = 0; r < n_rows; ++r) {
        const Seed row_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
        for (std::size_t c = 0; c < cols; ++c) {
            Rng rng(derive_seed(row_seed, c));
            const auto [re, im] = rng.complex_gaussian();
            out(static_cast<std::size_t>(r), c) = Complex(re, im);
        }
    }
    (void)exec;
    return out;
}

ComplexMatrix sample_haar_unitary(std::size_t m, Seed seed) {
    if (m == 0) {
        throw DimensionError("sample_haar_unitary: dimension must be >= 1");
    }
    const ComplexMatrix z = sample_gaussian_matrix(m, m, seed);
    const auto size = static_cast<Eigen::Index>(m);
    Eigen::MatrixXcd ez(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        for (Eigen::Index c = 0; c < size; ++c) {
            ez(r, c) = z(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ez);
    const Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& packed = qr.matrixQR();

    ComplexMatrix u(m, m);
    for (Eigen::Index c = 0; c < size; ++c) {
        const Complex d = packed(c, c);
        const double mag = std::abs(d);
        const Complex phase = mag > 0.0 ? d / mag : Complex{1.0, 0.0};
        for (Eigen::Index r = 0; r < size; ++r) {
            u(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = q(r, c) * phase;
        }
    }
    return u;
}

double unitarity_defect(const ComplexMatrix& u) {
    const ComplexMatrix g = multiply(adjoint(u), u);
    double worst = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const Complex expected = r == c ? Complex{1.0, 0.0} : Complex{};
            worst = std::max(worst, std::abs(g(r, c) - expected));
        }
    }
    return worst;
}

} // namespace noisyboson
