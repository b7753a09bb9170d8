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

#include "noisyboson/matrix.hpp"

#include <cmath>
#include <string>

namespace noisyboson {

namespace {

void check_index_set(std::span<const std::size_t> set, std::size_t bound, const char* what,
                     bool strictly_increasing) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= bound) {
            throw IndexError(std::string(what) + " index " + std::to_string(set[i]) +
                             " out of range (bound " + std::to_string(bound) + ")");
        }
        if (strictly_increasing && i > 0 && set[i] <= set[i - 1]) {
            throw IndexError(std::string(what) + " index set must be strictly increasing");
        }
    }
}

} // namespace

void require_finite(const ComplexMatrix& m) {
    for (const auto& v : m.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericalError("matrix has a non-finite entry");
        }
    }
}

void require_finite(const RealMatrix& m) {
    for (double v : m.data()) {
        if (!std::isfinite(v)) {
            throw NumericalError("matrix has a non-finite entry");
        }
    }
}

RealMatrix abs_squared(const ComplexMatrix& m) {
    RealMatrix out(m.rows(), m.cols());
    auto src = m.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = std::norm(src[i]);
    }
    return out;
}

ComplexMatrix to_complex(const RealMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    auto src = m.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = Complex(src[i], 0.0);
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex v = a(r, k);
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix scaled(const ComplexMatrix& m, Complex factor) {
    ComplexMatrix out = m;
    for (auto& v : out.data()) {
        v *= factor;
    }
    return out;
}

ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const std::size_t> row_set,
                        std::span<const std::size_t> col_set) {
    check_index_set(row_set, m.rows(), "row", true);
    check_index_set(col_set, m.cols(), "column", true);
    return gather_rows_cols(m, row_set, col_set);
}

ComplexMatrix gather_rows_cols(const ComplexMatrix& m, std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols) {
    check_index_set(rows, m.rows(), "row", false);
    check_index_set(cols, m.cols(), "column", false);
    if (rows.empty() || cols.empty()) {
        return ComplexMatrix(rows.size(), cols.size());
    }
    ComplexMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(r, c) = m(rows[r], cols[c]);
        }
    }
    return out;
}

} // namespace noisyboson
