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
#include <string>
#include <vector>

#include <json.hpp>

#include "noisyboson/rng.hpp"

namespace noisyboson {

/// Outcome of a truncation experiment. The first eight fields are the public
/// record layout; the rest are diagnostics appended after them.
struct TailReport {
    int N = 0;
    double x = 0.0;
    int l = 0;
    double exact_tail = 0.0;
    double chernoff_bound = 0.0;
    double empirical_violation_rate = 0.0;
    double epsilon1 = 0.0;
    std::size_t trials = 0;

    double delta = 0.0;
    /// Sample mean and standard error of q - q^(l) in q/N! units.
    double mean_gap = 0.0;
    double gap_std_error = 0.0;
    /// Violation rate with the threshold exact_tail / delta (Markov's inequality).
    double markov_violation_rate = 0.0;
};

/// P[Binomial(N, 1-x) >= l+1] = sum_{j=0}^{N-l-1} C(N,j) x^j (1-x)^(N-j).
/// Compensated direct sum up to N = 60, log-sum-exp beyond.
double binomial_tail(int N, double x, int l);

/// exp(-(k/3)(l/k - 1)^2) with k = (1-x)N. Requires k > 0 and l >= k.
/// This is the xi <= 1 form of the multiplicative Chernoff bound; it is not a
/// valid upper bound when l+1 > 2k.
double chernoff_tail_bound(int N, double x, int l);

/// exp(-xi^2 k / (2 + xi)) with xi = (l+1)/k - 1, valid for every xi > 0.
double chernoff_tail_bound_general(int N, double x, int l);

/// delta^-1 N^(-(c_max/3)(c_l/c_max - 1)^2). Requires c_l > c_max > 0, delta in (0,1).
double epsilon1_log(double c_max, double c_l, double N, double delta);

/// delta^-1 N exp(-l log(l/k_max) + l - k_max). Requires l > k_max > 0.
double epsilon1_sublog(double l, double k_max, double N, double delta);

/// eps exp(l (1 + log(1/Delta))) / sqrt(2 pi l): error at 1 of a degree-l polynomial
/// bounded by eps on l+1 equispaced nodes of [-Delta, Delta].
double kondo_bound(double eps, int l, double Delta);

/// Draws `trials` Gaussian matrices and counts how often |q - q^(l)| > epsilon1,
/// with epsilon1 from epsilon1_log at c_max = k/log N, c_l = l/log N, k = (1-x)N.
/// Trial t uses derive_seed(seed, t); the report is independent of exec.threads.
TailReport verify_lemma1(int N, double x, int l, double delta, std::size_t trials, Seed seed,
                         const Exec& exec = {});

nlohmann::ordered_json to_json(const TailReport& r);
std::vector<std::string> tail_report_csv_header();
std::vector<std::string> tail_report_csv_row(const TailReport& r);

} // namespace noisyboson
