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

#include "noisyboson/noisyprob.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "noisyboson/combinatorics.hpp"
#include "noisyboson/errors.hpp"
#include "noisyboson/permanent.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisyboson {

namespace {

void require_unit_interval(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw DomainError(std::string(name) + " = " + std::to_string(v) + " is outside [0, 1]");
    }
}

void require_sweep_order(const ComplexMatrix& m, std::size_t limit, const char* what) {
    if (!m.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square");
    }
    if (m.rows() > limit) {
        throw RefusalError(std::string(what) + ": N = " + std::to_string(m.rows()) +
                           " exceeds the desk-scale limit " + std::to_string(limit));
    }
    require_finite(m);
}

// Negative rounding residue within tolerance becomes 0; more than that is a bug.
NormalizedProbability make_probability(double value, std::size_t photons, double scale = 1.0) {
    if (value < 0.0) {
        if (value >= -1e-12 * std::max(1.0, scale)) {
            value = 0.0;
        } else {
            throw NumericalError("probability came out negative: " + std::to_string(value));
        }
    }
    if (!std::isfinite(value)) {
        throw NumericalError("probability is not finite");
    }
    return {value, log_factorial(static_cast<int>(photons))};
}

RealMatrix real_block(const RealMatrix& m, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols) {
    RealMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(r, c) = m(rows[r], cols[c]);
        }
    }
    return out;
}

// Laplace expansion along the listed rows: dp[J] = Per(M_{rows[0..|J|), J}) for |J| <= rows.size().
template <typename T>
void subset_permanents(const Matrix<T>& m, std::span<const std::size_t> rows, std::vector<T>& dp) {
    const std::size_t depth = rows.size();
    const SubsetMask limit = full_mask(static_cast<int>(m.cols()));
    dp[0] = T{1};
    for (SubsetMask cols = 1; cols <= limit && cols != 0; ++cols) {
        const auto t = static_cast<std::size_t>(std::popcount(cols));
        if (t > depth) {
            continue;
        }
        const std::size_t row = rows[t - 1];
        T acc{};
        SubsetMask rest = cols;
        while (rest != 0) {
            const int c = std::countr_zero(rest);
            rest &= rest - 1;
            acc += m(row, static_cast<std::size_t>(c)) * dp[cols ^ (SubsetMask{1} << c)];
        }
        dp[cols] = acc;
    }
}

} // namespace

void NoiseParams::validate() const {
    require_unit_interval(x, "x");
    require_unit_interval(eta, "eta");
}

std::vector<double> binomial_weights(int n, double x) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        w[static_cast<std::size_t>(j)] = binomial_weight(n, j, x);
    }
    return w;
}

FixedJTable FixedJTable::compute(const ComplexMatrix& x_matrix, const Exec& exec) {
    require_sweep_order(x_matrix, kMaxSweepOrder, "fixed-j sweep");
    const int n = static_cast<int>(x_matrix.rows());
    const RealMatrix weights = abs_squared(x_matrix);
    const SubsetMask all = full_mask(n);
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<double> per_row_subset(subsets, 0.0);

#if defined(_OPENMP)
#pragma omp parallel num_threads(std::max(1, exec.threads)) if (exec.threads > 1 && n >= 4)
#endif
    {
        std::vector<Complex> coherent(subsets);
        std::vector<double> classical(subsets);
#if defined(_OPENMP)
#pragma omp for schedule(dynamic, 8)
#endif
        for (std::int64_t task = 0; task < static_cast<std::int64_t>(subsets); ++task) {
            const auto rows = static_cast<SubsetMask>(task);
            const std::vector<std::size_t> in_rows = mask_indices(rows);
            const std::vector<std::size_t> out_rows = mask_indices(all ^ rows);
            subset_permanents(x_matrix, in_rows, coherent);
            subset_permanents(weights, out_rows, classical);

            const int j = std::popcount(rows);
            double acc = 0.0;
            for (SubsetMask cols = 0; cols <= all; ++cols) {
                if (std::popcount(cols) == j) {
                    acc += std::norm(coherent[cols]) * classical[all ^ cols];
                }
                if (cols == all) {
                    break;
                }
            }
            per_row_subset[static_cast<std::size_t>(task)] = acc;
        }
    }
    (void)exec;

    std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<KahanSum> sums(q.size());
    for (std::size_t rows = 0; rows < subsets; ++rows) {
        sums[static_cast<std::size_t>(std::popcount(static_cast<SubsetMask>(rows)))].add(per_row_subset[rows]);
    }
    for (int j = 0; j <= n; ++j) {
        q[static_cast<std::size_t>(j)] =
            sums[static_cast<std::size_t>(j)].value() / binomial(n, j) / factorial(n);
    }
    return FixedJTable(n, std::move(q));
}

FixedJTable FixedJTable::compute_serial(const ComplexMatrix& x_matrix) {
    require_sweep_order(x_matrix, kMaxSweepOrder, "fixed-j sweep");
    const int n = static_cast<int>(x_matrix.rows());
    const RealMatrix weights = abs_squared(x_matrix);
    const SubsetMask all = full_mask(n);
    std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        const std::vector<SubsetMask> subsets = combinations(n, j);
        KahanSum acc;
        for (SubsetMask rows : subsets) {
            const auto in_rows = mask_indices(rows);
            const auto out_rows = mask_indices(all ^ rows);
            for (SubsetMask cols : subsets) {
                const auto in_cols = mask_indices(cols);
                const auto out_cols = mask_indices(all ^ cols);
                const Complex coherent = permanent_ryser_serial(submatrix(x_matrix, in_rows, in_cols));
                const double classical = permanent_ryser_serial(real_block(weights, out_rows, out_cols));
                acc.add(std::norm(coherent) * std::max(classical, 0.0));
            }
        }
        q[static_cast<std::size_t>(j)] = acc.value() / binomial(n, j) / factorial(n);
    }
    return FixedJTable(n, std::move(q));
}

double FixedJTable::q_j(int j) const {
    if (j < 0 || j > order_) {
        throw DomainError("q_j: j = " + std::to_string(j) + " outside [0, " + std::to_string(order_) + "]");
    }
    return q_[static_cast<std::size_t>(j)];
}

double FixedJTable::mixture(double x, int from_j) const {
    KahanSum acc;
    for (int j = std::max(from_j, 0); j <= order_; ++j) {
        acc.add(binomial_weight(order_, j, x) * q_[static_cast<std::size_t>(j)]);
    }
    return acc.value();
}

long double FixedJTable::mixture_extended(long double x, int from_j) const {
    long double acc = 0.0L;
    for (int j = std::max(from_j, 0); j <= order_; ++j) {
        const long double w = static_cast<long double>(binomial(order_, j)) * std::pow(x, j) *
                              std::pow(1.0L - x, order_ - j);
        acc += w * static_cast<long double>(q_[static_cast<std::size_t>(j)]);
    }
    return acc;
}

NormalizedProbability q_ideal(const ComplexMatrix& x_matrix) {
    if (!x_matrix.is_square()) {
        throw DimensionError("q_ideal: matrix must be square");
    }
    const Complex per = permanent_complex(x_matrix);
    const int n = static_cast<int>(x_matrix.rows());
    return make_probability(std::norm(per) / factorial(n), x_matrix.rows());
}

NormalizedProbability q_noisy_permpair(double x, const ComplexMatrix& x_matrix) {
    require_unit_interval(x, "x");
    require_sweep_order(x_matrix, kMaxPermPairOrder, "q_noisy_permpair");
    const std::size_t n = x_matrix.rows();

    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Complex> products(perms.size());
    for (std::size_t p = 0; p < perms.size(); ++p) {
        Complex prod{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            prod *= x_matrix(perms[p][i], i);
        }
        products[p] = prod;
    }
    std::vector<double> powers(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        powers[k] = std::pow(x, static_cast<double>(k));
    }

    Complex sum{};
    double magnitude = 0.0;
    for (std::size_t s = 0; s < perms.size(); ++s) {
        for (std::size_t r = 0; r < perms.size(); ++r) {
            std::size_t agree = 0;
            for (std::size_t i = 0; i < n; ++i) {
                agree += perms[s][i] == perms[r][i] ? 1 : 0;
            }
            const Complex term = powers[n - agree] * products[s] * std::conj(products[r]);
            sum += term;
            magnitude += std::abs(term);
        }
    }
    const double nfact = factorial(static_cast<int>(n));
    const double re = sum.real() / nfact;
    const double im = sum.imag() / nfact;
    if (std::abs(im) > 1e-9 * (1.0 + std::abs(re))) {
        throw NumericalError("q_noisy_permpair: imaginary residue " + std::to_string(im));
    }
    return make_probability(re, n, magnitude / nfact);
}

NormalizedProbability q_fixed_j(int j, const ComplexMatrix& x_matrix) {
    return q_fixed_j(j, FixedJTable::compute(x_matrix));
}

NormalizedProbability q_fixed_j(int j, const FixedJTable& table) {
    return make_probability(table.q_j(j), static_cast<std::size_t>(table.order()));
}

NormalizedProbability q_noisy_binomial(double x, const ComplexMatrix& x_matrix, const Exec& exec) {
    require_unit_interval(x, "x");
    return q_noisy_binomial(x, FixedJTable::compute(x_matrix, exec));
}

NormalizedProbability q_noisy_binomial(double x, const FixedJTable& table) {
    require_unit_interval(x, "x");
    return make_probability(table.mixture(x), static_cast<std::size_t>(table.order()));
}

NormalizedProbability q_truncated(int l, double x, const ComplexMatrix& x_matrix) {
    return q_truncated(l, x, FixedJTable::compute(x_matrix));
}

NormalizedProbability q_truncated(int l, double x, const FixedJTable& table) {
    require_unit_interval(x, "x");
    const int n = table.order();
    if (l < 0 || l > n) {
        throw DomainError("q_truncated: l = " + std::to_string(l) + " outside [0, N]");
    }
    return make_probability(table.mixture(x, n - l), static_cast<std::size_t>(n));
}

double f_poly_eval(int l, double x, const ComplexMatrix& x_matrix) {
    return f_poly_eval(l, x, FixedJTable::compute(x_matrix));
}

double f_poly_eval(int l, double x, const FixedJTable& table) {
    const int n = table.order();
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("f_poly_eval: x must be > 0 (x^(l-N) is undefined at 0)");
    }
    if (l < 0 || l > n) {
        throw DomainError("f_poly_eval: l = " + std::to_string(l) + " outside [0, N]");
    }
    // x^(l-N) C(N,j) x^j (1-x)^(N-j) = C(N,j) x^(j-N+l) (1-x)^(N-j); no negative powers needed.
    KahanSum acc;
    for (int j = n - l; j <= n; ++j) {
        acc.add(binomial(n, j) * std::pow(x, j - n + l) * std::pow(1.0 - x, n - j) * table.q_j(j));
    }
    return acc.value();
}

NormalizedProbability q_loss_dist(double x, double eta, std::size_t n, const ComplexMatrix& x_matrix,
                                  const Exec& exec) {
    NoiseParams{x, eta}.validate();
    const std::size_t inputs = x_matrix.cols();
    if (n != x_matrix.rows()) {
        throw DimensionError("q_loss_dist: n must equal the matrix row count");
    }
    if (n > inputs) {
        throw DimensionError("q_loss_dist: n = " + std::to_string(n) + " exceeds N = " + std::to_string(inputs));
    }
    if (inputs > 24) {
        throw RefusalError("q_loss_dist: N exceeds the subset enumeration limit");
    }
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    KahanSum acc;
    for (SubsetMask k : combinations(static_cast<int>(inputs), static_cast<int>(n))) {
        const auto cols = mask_indices(k);
        acc.add(FixedJTable::compute(submatrix(x_matrix, all_rows, cols), exec).mixture(x));
    }
    const double prefactor = std::pow(eta, static_cast<double>(n)) *
                             std::pow(1.0 - eta, static_cast<double>(inputs - n));
    return make_probability(prefactor * acc.value(), n);
}

NormalizedProbability q_loss(double eta, std::size_t n, const ComplexMatrix& x_matrix) {
    require_unit_interval(eta, "eta");
    const std::size_t inputs = x_matrix.cols();
    if (n != x_matrix.rows()) {
        throw DimensionError("q_loss: n must equal the matrix row count");
    }
    if (n > inputs) {
        throw DimensionError("q_loss: n = " + std::to_string(n) + " exceeds N = " + std::to_string(inputs));
    }
    if (inputs > 24) {
        throw RefusalError("q_loss: N exceeds the subset enumeration limit");
    }
    require_finite(x_matrix);
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    KahanSum acc;
    for (SubsetMask k : combinations(static_cast<int>(inputs), static_cast<int>(n))) {
        const auto cols = mask_indices(k);
        acc.add(std::norm(permanent_complex(submatrix(x_matrix, all_rows, cols))));
    }
    const double prefactor = std::pow(eta, static_cast<double>(n)) *
                             std::pow(1.0 - eta, static_cast<double>(inputs - n));
    return make_probability(prefactor * acc.value() / factorial(static_cast<int>(n)), n);
}

} // namespace noisyboson
