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

#include "noisyboson/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisyboson {

namespace {

template <typename T>
void require_square(const Matrix<T>& m, const char* what) {
    if (!m.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() > kMaxPermanentOrder) {
        throw RefusalError(std::string(what) + ": order " + std::to_string(m.rows()) +
                           " exceeds the exponential-kernel limit");
    }
}

// Signed Ryser partial sum over Gray-code positions [begin, end).
template <typename T>
T ryser_range(const Matrix<T>& m, std::uint64_t begin, std::uint64_t end) {
    const std::size_t n = m.rows();
    std::vector<T> row_sums(n, T{});
    std::uint64_t gray = begin ^ (begin >> 1);
    for (std::size_t c = 0; c < n; ++c) {
        if ((gray >> c) & 1U) {
            for (std::size_t r = 0; r < n; ++r) {
                row_sums[r] += m(r, c);
            }
        }
    }

    auto term = [&]() {
        T prod = row_sums[0];
        for (std::size_t r = 1; r < n; ++r) {
            prod *= row_sums[r];
        }
        return (std::popcount(gray) & 1) ? -prod : prod;
    };

    T acc = begin == 0 ? T{} : term();
    for (std::uint64_t k = begin + 1; k < end; ++k) {
        const int col = std::countr_zero(k);
        gray ^= std::uint64_t{1} << col;
        if ((gray >> col) & 1U) {
            for (std::size_t r = 0; r < n; ++r) {
                row_sums[r] += m(r, static_cast<std::size_t>(col));
            }
        } else {
            for (std::size_t r = 0; r < n; ++r) {
                row_sums[r] -= m(r, static_cast<std::size_t>(col));
            }
        }
        acc += term();
    }
    return acc;
}

template <typename T>
T ryser_chunked(const Matrix<T>& m, std::size_t chunks, const Exec& exec) {
    const std::size_t n = m.rows();
    if (n == 0) {
        return T{1};
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    const auto pieces = static_cast<std::int64_t>(std::clamp<std::uint64_t>(chunks, 1, total));
    std::vector<T> partial(static_cast<std::size_t>(pieces), T{});
    const std::uint64_t step = total / static_cast<std::uint64_t>(pieces);

#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(std::max(1, exec.threads)) if (pieces > 1 && exec.threads > 1)
#endif
    for (std::int64_t c = 0; c < pieces; ++c) {
        const auto idx = static_cast<std::uint64_t>(c);
        const std::uint64_t begin = idx * step;
        const std::uint64_t end = c + 1 == pieces ? total : begin + step;
        partial[static_cast<std::size_t>(c)] = ryser_range(m, begin, end);
    }
    (void)exec;

    T sum{};
    for (const T& p : partial) {
        sum += p;
    }
    return (n & 1U) ? -sum : sum;
}

} // namespace

std::size_t default_permanent_chunks(std::size_t n) noexcept { return n >= 16 ? 64 : 1; }

Complex permanent_ryser(const ComplexMatrix& m, std::size_t chunks, const Exec& exec) {
    require_square(m, "permanent");
    return ryser_chunked(m, chunks, exec);
}

double permanent_ryser(const RealMatrix& m, std::size_t chunks, const Exec& exec) {
    require_square(m, "permanent");
    return ryser_chunked(m, chunks, exec);
}

Complex permanent_ryser_serial(const ComplexMatrix& m) {
    require_square(m, "permanent");
    if (m.rows() == 0) {
        return Complex{1.0, 0.0};
    }
    const Complex sum = ryser_range(m, 0, std::uint64_t{1} << m.rows());
    return (m.rows() & 1U) ? -sum : sum;
}

double permanent_ryser_serial(const RealMatrix& m) {
    require_square(m, "permanent");
    if (m.rows() == 0) {
        return 1.0;
    }
    const double sum = ryser_range(m, 0, std::uint64_t{1} << m.rows());
    return (m.rows() & 1U) ? -sum : sum;
}

Complex permanent_glynn(const ComplexMatrix& m) {
    require_square(m, "permanent");
    const std::size_t n = m.rows();
    if (n == 0) {
        return Complex{1.0, 0.0};
    }
    // delta_0 is pinned to +1; the Gray code flips delta_1..delta_{n-1}.
    std::vector<Complex> col_sums(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            col_sums[c] += m(r, c);
        }
    }
    auto product = [&]() {
        Complex p = col_sums[0];
        for (std::size_t c = 1; c < n; ++c) {
            p *= col_sums[c];
        }
        return p;
    };

    Complex acc = product();
    std::uint64_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);
        gray ^= std::uint64_t{1} << bit;
        const std::size_t row = static_cast<std::size_t>(bit) + 1;
        // flipped to -1 subtracts twice the row, flipped back adds it
        const double factor = ((gray >> bit) & 1U) ? -2.0 : 2.0;
        for (std::size_t c = 0; c < n; ++c) {
            col_sums[c] += factor * m(row, c);
        }
        const Complex p = product();
        acc += (std::popcount(gray) & 1) ? -p : p;
    }
    return acc / std::ldexp(1.0, static_cast<int>(n) - 1);
}

Complex permanent_complex(const ComplexMatrix& m, PermanentKernel kernel, const Exec& exec) {
    require_square(m, "permanent");
    require_finite(m);
    if (kernel == PermanentKernel::glynn) {
        return permanent_glynn(m);
    }
    return ryser_chunked(m, default_permanent_chunks(m.rows()), exec);
}

double permanent_nonneg(const RealMatrix& m, const Exec& exec) {
    require_square(m, "permanent_nonneg");
    require_finite(m);
    double bound = 1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double row_sum = 0.0;
        for (double v : m.row(r)) {
            if (v < 0.0) {
                throw DomainError("permanent_nonneg: negative entry");
            }
            row_sum += v;
        }
        bound *= row_sum;
    }
    const double value = ryser_chunked(m, default_permanent_chunks(m.rows()), exec);
    if (value >= 0.0) {
        return value;
    }
    // Each of the 2^n Ryser terms is bounded by the product of row sums.
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * bound *
                       std::ldexp(1.0, static_cast<int>(m.rows()));
    if (-value <= tol) {
        return 0.0;
    }
    throw NumericalError("permanent_nonneg: result " + std::to_string(value) +
                         " is negative beyond rounding tolerance");
}

Complex permanent_naive(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw DimensionError("permanent_naive: matrix must be square");
    }
    const std::size_t n = m.rows();
    if (n > kMaxNaiveOrder) {
        throw RefusalError("permanent_naive: order " + std::to_string(n) +
                           " would need more than 9! terms");
    }
    if (n == 0) {
        return Complex{1.0, 0.0};
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Complex sum{};
    do {
        Complex prod{1.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            prod *= m(r, perm[r]);
        }
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

} // namespace noisyboson
