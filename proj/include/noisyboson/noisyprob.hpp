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
#include <span>
#include <vector>

#include "noisyboson/matrix.hpp"
#include "noisyboson/rng.hpp"

namespace noisyboson {

/// Indistinguishability x and transmission eta, both in [0, 1].
struct NoiseParams {
    double x = 1.0;
    double eta = 1.0;

    void validate() const;
};

/// A rescaled output probability q divided by n! (n = photon count).
/// The factorial itself is kept only as its logarithm.
struct NormalizedProbability {
    double value = 0.0;
    double log_scale_factor = 0.0;
};

/// Largest photon number the subset-pair sweep accepts.
inline constexpr std::size_t kMaxSweepOrder = 12;
/// Largest photon number for the (N!)^2 permutation-pair oracle.
inline constexpr std::size_t kMaxPermPairOrder = 6;

/// q_j(X) / N! for j = 0..N from one pass over all row subsets.
///
///   q_j(X) = C(N,j)^-1 sum_{|I|=|J|=j} |Per X_{I,J}|^2 Per |X_{~I,~J}|^2
///
/// The parallel kernel fixes a row subset I per task and builds the
/// permanents of every column subset J by Laplace expansion along the rows of
/// I, which costs O(N 4^N) in total instead of one Ryser call per pair.
/// Per-task sums are reduced in subset order, so the table does not depend on
/// the worker count.
class FixedJTable {
  public:
    static FixedJTable compute(const ComplexMatrix& x_matrix, const Exec& exec = {});
    /// Reference: lexicographic (I, J) pairs, one Ryser permanent per block.
    static FixedJTable compute_serial(const ComplexMatrix& x_matrix);

    int order() const noexcept { return order_; }
    double q_j(int j) const;
    std::span<const double> values() const noexcept { return q_; }

    /// sum_j C(N,j) x^j (1-x)^(N-j) q_j over j >= from_j.
    double mixture(double x, int from_j = 0) const;
    /// Same sum in extended precision, for callers that amplify rounding (extrapolation).
    long double mixture_extended(long double x, int from_j = 0) const;

  private:
    FixedJTable(int order, std::vector<double> q) : order_(order), q_(std::move(q)) {}

    int order_ = 0;
    std::vector<double> q_;
};

/// |Per X|^2 / N!
NormalizedProbability q_ideal(const ComplexMatrix& x_matrix);

/// Permutation-pair form, sum_{sigma,rho} x^(N - agree) prod X_{sigma(i),i} X*_{rho(i),i}.
/// Small-N oracle for the binomial form; refuses N > 6.
NormalizedProbability q_noisy_permpair(double x, const ComplexMatrix& x_matrix);

NormalizedProbability q_fixed_j(int j, const ComplexMatrix& x_matrix);
NormalizedProbability q_fixed_j(int j, const FixedJTable& table);

/// Binomial mixture of the fixed-j probabilities. Refuses N > 12.
NormalizedProbability q_noisy_binomial(double x, const ComplexMatrix& x_matrix, const Exec& exec = {});
NormalizedProbability q_noisy_binomial(double x, const FixedJTable& table);

/// Keeps only the terms j = N-l .. N.
NormalizedProbability q_truncated(int l, double x, const ComplexMatrix& x_matrix);
NormalizedProbability q_truncated(int l, double x, const FixedJTable& table);

/// Degree-l polynomial f(x) = x^(l-N) q^(l)(x), in q/N! units. f(1) = q_ideal.
double f_poly_eval(int l, double x, const ComplexMatrix& x_matrix);
double f_poly_eval(int l, double x, const FixedJTable& table);

/// Loss plus distinguishability for an n x N matrix (n detected photons out of N):
/// eta^n (1-eta)^(N-n) sum_{|K|=n} q(x, X_K), in q/n! units.
NormalizedProbability q_loss_dist(double x, double eta, std::size_t n, const ComplexMatrix& x_matrix,
                                  const Exec& exec = {});

/// Pure loss: eta^n (1-eta)^(N-n) sum_{|K|=n} |Per X_K|^2 / n!.
NormalizedProbability q_loss(double eta, std::size_t n, const ComplexMatrix& x_matrix);

/// C(N,j) x^j (1-x)^(N-j) for j = 0..N.
std::vector<double> binomial_weights(int n, double x);

} // namespace noisyboson
