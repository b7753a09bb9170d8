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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "noisyboson/errors.hpp"

namespace noisyboson {

using Complex = std::complex<double>;

/// Dense row-major matrix. A 0x0 matrix is allowed so subset formulas can
/// hand out empty blocks; every other shape must have rows, cols >= 1.
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{});
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries);
    Matrix(std::initializer_list<std::initializer_list<T>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

/// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m);
void require_finite(const RealMatrix& m);

/// Elementwise |m_ij|^2.
RealMatrix abs_squared(const ComplexMatrix& m);

ComplexMatrix to_complex(const RealMatrix& m);

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scaled(const ComplexMatrix& m, Complex factor);

/// Rows and columns picked by the given index lists, in the order given.
/// Both lists must be strictly increasing and in range; empty lists give a 0x0 matrix.
ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const std::size_t> row_set,
                        std::span<const std::size_t> col_set);

/// Same as submatrix but rows may repeat (outcome patterns with collisions).
ComplexMatrix gather_rows_cols(const ComplexMatrix& m, std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols);

// ---------------------------------------------------------------------------

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, T fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("entry count does not match rows * cols");
    }
}

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged matrix initializer");
        }
        for (const auto& v : r) {
            data_.push_back(v);
        }
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = T{1};
    }
    return m;
}

} // namespace noisyboson
