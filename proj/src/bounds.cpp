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

#include "noisyboson/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "noisyboson/combinatorics.hpp"
#include "noisyboson/errors.hpp"
#include "noisyboson/matrix_io.hpp"
#include "noisyboson/noisyprob.hpp"
#include "noisyboson/randmat.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisyboson {

namespace {

void check_tail_args(int N, double x, int l) {
    if (N < 0 || l < 0 || l > N) {
        throw DomainError("tail: need 0 <= l <= N");
    }
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw DomainError("tail: x outside [0, 1]");
    }
}

double mean_distinguishable(int N, double x) { return (1.0 - x) * N; }

// k = (1-x)N carries rounding from x = 1 - k/N; l = k must still be accepted.
bool below_mean(int l, double k) { return l < k * (1.0 - 1e-12); }

} // namespace

double binomial_tail(int N, double x, int l) {
    check_tail_args(N, x, l);
    const int last = N - l - 1;
    if (last < 0) {
        return 0.0;
    }
    if (N <= 60 || x == 0.0 || x == 1.0) {
        KahanSum sum;
        for (int j = 0; j <= last; ++j) {
            sum.add(binomial_weight(N, j, x));
        }
        return std::min(1.0, sum.value());
    }
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(last) + 1);
    const double log_x = std::log(x);
    const double log_1mx = std::log1p(-x);
    for (int j = 0; j <= last; ++j) {
        logs.push_back(log_binomial(N, j) + j * log_x + (N - j) * log_1mx);
    }
    return std::min(1.0, std::exp(log_sum_exp(logs)));
}

double chernoff_tail_bound(int N, double x, int l) {
    check_tail_args(N, x, l);
    const double k = mean_distinguishable(N, x);
    if (!(k > 0.0)) {
        throw DomainError("chernoff_tail_bound: needs k = (1-x)N > 0");
    }
    if (below_mean(l, k)) {
        throw DomainError("chernoff_tail_bound: l < k, bound direction invalid");
    }
    const double ratio = l / k - 1.0;
    return std::exp(-(k / 3.0) * ratio * ratio);
}

double chernoff_tail_bound_general(int N, double x, int l) {
    check_tail_args(N, x, l);
    const double k = mean_distinguishable(N, x);
    if (!(k > 0.0)) {
        throw DomainError("chernoff_tail_bound_general: needs k = (1-x)N > 0");
    }
    if (below_mean(l, k)) {
        throw DomainError("chernoff_tail_bound_general: l < k, bound direction invalid");
    }
    const double xi = (l + 1.0) / k - 1.0;
    return std::exp(-xi * xi * k / (2.0 + xi));
}

double epsilon1_log(double c_max, double c_l, double N, double delta) {
    if (!(c_max > 0.0) || !(c_l > c_max)) {
        throw DomainError("epsilon1_log: needs c_l > c_max > 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("epsilon1_log: delta outside (0, 1)");
    }
    if (!(N > 1.0)) {
        throw DomainError("epsilon1_log: N must exceed 1");
    }
    const double ratio = c_l / c_max - 1.0;
    return std::exp(-std::log(delta) - (c_max / 3.0) * ratio * ratio * std::log(N));
}

double epsilon1_sublog(double l, double k_max, double N, double delta) {
    if (!(k_max > 0.0) || !(l > k_max)) {
        throw DomainError("epsilon1_sublog: needs l > k_max > 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("epsilon1_sublog: delta outside (0, 1)");
    }
    return std::exp(-std::log(delta) + std::log(N) - l * std::log(l / k_max) + l - k_max);
}

double kondo_bound(double eps, int l, double Delta) {
    if (!(Delta > 0.0 && Delta < 1.0)) {
        throw DomainError("kondo_bound: Delta outside (0, 1)");
    }
    if (l < 1) {
        throw DomainError("kondo_bound: l must be >= 1");
    }
    if (!(eps >= 0.0)) {
        throw DomainError("kondo_bound: eps must be >= 0");
    }
    return eps * std::exp(l * (1.0 + std::log(1.0 / Delta))) / std::sqrt(2.0 * std::numbers::pi * l);
}

TailReport verify_lemma1(int N, double x, int l, double delta, std::size_t trials, Seed seed,
                         const Exec& exec) {
    check_tail_args(N, x, l);
    if (N < 2 || static_cast<std::size_t>(N) > kMaxSweepOrder) {
        throw RefusalError("verify_lemma1: N must lie in [2, 12]");
    }
    const double k = mean_distinguishable(N, x);
    if (!(k > 0.0) || l <= k) {
        throw DomainError("verify_lemma1: needs l > k = (1-x)N > 0");
    }
    if (trials == 0) {
        throw DomainError("verify_lemma1: trials must be >= 1");
    }

    TailReport report;
    report.N = N;
    report.x = x;
    report.l = l;
    report.trials = trials;
    report.delta = delta;
    report.exact_tail = binomial_tail(N, x, l);
    report.chernoff_bound = chernoff_tail_bound(N, x, l);
    const double log_n = std::log(static_cast<double>(N));
    report.epsilon1 = epsilon1_log(k / log_n, l / log_n, N, delta);
    const double markov_threshold = report.exact_tail / delta;

    std::vector<double> gaps(trials);
    const auto count = static_cast<std::int64_t>(trials);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(1, exec.threads)) if (exec.threads > 1)
#endif
    for (std::int64_t t = 0; t < count; ++t) {
        const ComplexMatrix m = sample_gaussian_matrix(static_cast<std::size_t>(N), static_cast<std::size_t>(N),
                                                       derive_seed(seed, static_cast<std::uint64_t>(t)));
        const FixedJTable table = FixedJTable::compute(m);
        KahanSum gap;
        for (int j = 0; j < N - l; ++j) {
            gap.add(binomial_weight(N, j, x) * table.q_j(j));
        }
        gaps[static_cast<std::size_t>(t)] = gap.value();
    }
    (void)exec;

    std::size_t violations = 0;
    std::size_t markov_violations = 0;
    KahanSum sum;
    for (double g : gaps) {
        violations += g > report.epsilon1 ? 1 : 0;
        markov_violations += g > markov_threshold ? 1 : 0;
        sum.add(g);
    }
    const double n_trials = static_cast<double>(trials);
    report.mean_gap = sum.value() / n_trials;
    KahanSum sq;
    for (double g : gaps) {
        sq.add((g - report.mean_gap) * (g - report.mean_gap));
    }
    report.gap_std_error = trials > 1 ? std::sqrt(sq.value() / (n_trials - 1.0) / n_trials) : 0.0;
    report.empirical_violation_rate = static_cast<double>(violations) / n_trials;
    report.markov_violation_rate = static_cast<double>(markov_violations) / n_trials;
    return report;
}

nlohmann::ordered_json to_json(const TailReport& r) {
    nlohmann::ordered_json j;
    j["N"] = r.N;
    j["x"] = r.x;
    j["l"] = r.l;
    j["exact_tail"] = r.exact_tail;
    j["chernoff_bound"] = r.chernoff_bound;
    j["empirical_violation_rate"] = r.empirical_violation_rate;
    j["epsilon1"] = r.epsilon1;
    j["trials"] = r.trials;
    j["delta"] = r.delta;
    j["mean_gap"] = r.mean_gap;
    j["gap_std_error"] = r.gap_std_error;
    j["markov_violation_rate"] = r.markov_violation_rate;
    return j;
}

std::vector<std::string> tail_report_csv_header() {
    return {"N", "x", "l", "exact_tail", "chernoff_bound", "empirical_violation_rate", "epsilon1", "trials",
            "delta", "mean_gap", "gap_std_error", "markov_violation_rate"};
}

std::vector<std::string> tail_report_csv_row(const TailReport& r) {
    return {std::to_string(r.N),
            format_double(r.x),
            std::to_string(r.l),
            format_double(r.exact_tail),
            format_double(r.chernoff_bound),
            format_double(r.empirical_violation_rate),
            format_double(r.epsilon1),
            std::to_string(r.trials),
            format_double(r.delta),
            format_double(r.mean_gap),
            format_double(r.gap_std_error),
            format_double(r.markov_violation_rate)};
}

} // namespace noisyboson
