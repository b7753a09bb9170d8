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

// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance                 run everything
//   acceptance --criterion 7   run one criterion
//
// Exit status is 0 only if every selected criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "noisyboson/bounds.hpp"
#include "noisyboson/combinatorics.hpp"
#include "noisyboson/noisyprob.hpp"
#include "noisyboson/permanent.hpp"
#include "noisyboson/randmat.hpp"
#include "noisyboson/reduction.hpp"
#include "noisyboson/sampler.hpp"

using namespace noisyboson;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Verdict()> run;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

Verdict formula_equivalence() {
    double worst = 0.0;
    int cases = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto x_matrix = sample_gaussian_matrix(n, n, derive_seed(Seed{1001}, 100 * n + s));
            const auto table = FixedJTable::compute(x_matrix);
            for (double x : {0.0, 0.3, 0.7, 1.0}) {
                worst = std::max(worst, rel_diff(q_noisy_binomial(x, table).value,
                                                 q_noisy_permpair(x, x_matrix).value));
                ++cases;
            }
        }
    }
    return {worst <= 1e-9, std::to_string(cases) + " cases, max |diff|/(1+q) = " + sci(worst) + " (limit 1e-9)"};
}

Verdict endpoint_identities() {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto x_matrix = sample_gaussian_matrix(n, n, derive_seed(Seed{1002}, 100 * n + s));
            const auto table = FixedJTable::compute(x_matrix);
            const double nf = factorial(static_cast<int>(n));
            const double ideal = std::norm(permanent_complex(x_matrix)) / nf;
            const double classical = permanent_nonneg(abs_squared(x_matrix)) / nf;
            worst = std::max(worst, rel_diff(q_noisy_binomial(1.0, table).value, ideal));
            worst = std::max(worst, rel_diff(q_noisy_binomial(0.0, table).value, classical));
        }
    }
    return {worst <= 1e-10, "N = 1..8, 20 seeds, max |diff|/(1+q) = " + sci(worst) + " (limit 1e-10)"};
}

Verdict expectation_identity() {
    const int draws = 10000;
    double worst_z = 0.0;
    std::string where;
    for (int n = 3; n <= 5; ++n) {
        std::vector<double> sum(static_cast<std::size_t>(n) + 1, 0.0);
        std::vector<double> sum_sq(sum.size(), 0.0);
        for (int t = 0; t < draws; ++t) {
            const auto x_matrix = sample_gaussian_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                                                         derive_seed(Seed{1003}, 1000000ULL * n + t));
            const auto table = FixedJTable::compute(x_matrix);
            for (int j = 0; j <= n; ++j) {
                const double v = table.q_j(j);
                sum[static_cast<std::size_t>(j)] += v;
                sum_sq[static_cast<std::size_t>(j)] += v * v;
            }
        }
        for (int j = 0; j <= n; ++j) {
            const double mean = sum[static_cast<std::size_t>(j)] / draws;
            const double var = sum_sq[static_cast<std::size_t>(j)] / draws - mean * mean;
            const double z = std::abs(mean - 1.0) / std::sqrt(var / draws);
            if (z > worst_z) {
                worst_z = z;
                where = "N=" + std::to_string(n) + " j=" + std::to_string(j) + " mean " + sci(mean);
            }
        }
    }
    return {worst_z <= 5.0, "10^4 draws per N, worst |mean-1|/SE = " + sci(worst_z) + " at " + where + " (limit 5)"};
}

Verdict truncation_lemma() {
    const int n = 8;
    const double delta = 0.2;
    const std::size_t trials = 500;
    const double sigma = std::sqrt(delta * (1.0 - delta) / trials);
    bool ok = true;
    std::ostringstream detail;
    for (int k : {1, 2}) {
        for (int l : {4, 6}) {
            const double x = 1.0 - k / 8.0;
            const auto r = verify_lemma1(n, x, l, delta, trials, derive_seed(Seed{1004}, 10 * k + l));
            const bool rate_ok = r.empirical_violation_rate <= delta + 3.0 * sigma;
            const bool mean_ok = std::abs(r.mean_gap - r.exact_tail) <= 5.0 * r.gap_std_error;
            ok = ok && rate_ok && mean_ok;
            detail << "k=" << k << ",l=" << l << ": rate " << sci(r.empirical_violation_rate) << ", gap z "
                   << sci(std::abs(r.mean_gap - r.exact_tail) / r.gap_std_error) << "; ";
        }
    }
    detail << "limits rate <= " << sci(delta + 3.0 * sigma) << ", z <= 5";
    return {ok, detail.str()};
}

Verdict chernoff_dominance() {
    int total = 0;
    int violations = 0;
    std::string first;
    for (int n : {8, 12, 16, 24}) {
        for (int k : {1, 2, 3}) {
            const double x = 1.0 - static_cast<double>(k) / n;
            for (int l = k + 1; l <= n / 2; ++l) {
                ++total;
                const double tail = binomial_tail(n, x, l);
                const double bound = chernoff_tail_bound(n, x, l);
                if (tail > bound) {
                    if (violations++ == 0) {
                        first = "N=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                ": tail " + sci(tail) + " > bound " + sci(bound);
                    }
                }
            }
        }
    }
    std::string detail = std::to_string(total - violations) + "/" + std::to_string(total) + " grid points dominated";
    if (violations) {
        detail += "; first violation " + first + " (bound form needs (l+1)/k <= 2)";
    }
    return {violations == 0, detail};
}

Verdict exact_reduction() {
    double worst = 0.0;
    for (int n : {4, 6, 8}) {
        ParamOverrides o;
        o.l = n;
        const auto params = make_params(0.3, n, 0.1, 0.1, o);
        for (std::uint64_t s = 0; s < 100; ++s) {
            const auto x_matrix = sample_gaussian_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                                                         derive_seed(Seed{1006}, 1000 * n + s));
            const auto r = estimate_permanent_sq(x_matrix, OracleSpec{}, params);
            worst = std::max(worst, r.abs_error / r.truth);
        }
    }
    return {worst <= 1e-8, "N in {4,6,8}, 100 seeds, max relative error " + sci(worst) + " (limit 1e-8)"};
}

Verdict noisy_reduction() {
    const int n = 8;
    ParamOverrides o;
    o.l = 6;
    const auto params = make_params(0.5, n, 0.1, 0.1, o);
    OracleSpec spec;
    spec.mode = OracleMode::uniform_noise;
    spec.eps = 1e-3 * kondo_inverted_eps(params);
    int successes = 0;
    const int runs = 200;
    double worst_ratio = 0.0;
    for (int s = 0; s < runs; ++s) {
        const auto x_matrix = sample_gaussian_matrix(8, 8, derive_seed(Seed{1007}, s));
        spec.seed = derive_seed(Seed{1107}, s);
        const auto r = estimate_permanent_sq(x_matrix, spec, params);
        successes += r.success ? 1 : 0;
        worst_ratio = std::max(worst_ratio, r.abs_error / r.kondo_budget);
    }
    bool amp_ok = true;
    for (int l = 1; l <= 64; ++l) {
        amp_ok = amp_ok && amplification_factor(l, params.Delta) >= kondo_bound(1.0, l, params.Delta);
    }
    const double rate = static_cast<double>(successes) / runs;
    return {rate >= 0.99 && amp_ok, "success " + std::to_string(successes) + "/" + std::to_string(runs) +
                                        ", max error/budget " + sci(worst_ratio) + ", eps " + sci(spec.eps) +
                                        ", amplification >= kondo(1,l,Delta): " + (amp_ok ? "yes" : "no")};
}

Verdict constants_audit() {
    const auto p = make_params(0.3, 1000, 0.1, 0.1);
    bool ok = std::abs(p.Delta - 0.3565) <= 5e-5 && std::pow(1.0 - 2.0 * p.delta, p.l + 1) >= 1.0 - p.delta0;
    int audited = 0;
    for (double c_min : {0.05, 0.1, 0.2, 0.3}) {
        for (int n : {1000, 10000, 100000, 1000000}) {
            for (double budget : {0.01, 0.1, 0.3}) {
                try {
                    const auto q = make_params(c_min, n, budget, budget);
                    ok = ok && std::pow(1.0 - 2.0 * q.delta, q.l + 1) >= 1.0 - q.delta0 &&
                         std::abs(q.Delta - 0.3565) <= 5e-5;
                    ++audited;
                } catch (const RefusalError&) {
                }
            }
        }
    }
    return {ok, "Delta = " + sci(p.Delta) + ", l = " + std::to_string(p.l) + " at c_min=0.3, N=1000; " +
                    std::to_string(audited) + " feasible parameter sets audited"};
}

Verdict loss_identities() {
    double worst_dist = 0.0;
    double worst_loss = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto x_matrix = sample_gaussian_matrix(n, n, derive_seed(Seed{1009}, 100 * n + s));
            for (double x : {0.0, 0.4, 1.0}) {
                for (double eta : {0.3, 0.9, 1.0}) {
                    const double lhs = q_loss_dist(x, eta, n, x_matrix).value;
                    const double rhs = std::pow(eta, static_cast<double>(n)) * q_noisy_binomial(x, x_matrix).value;
                    worst_dist = std::max(worst_dist, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
                }
            }
            for (std::size_t detected = 1; detected <= n; ++detected) {
                const auto y = sample_gaussian_matrix(detected, n, derive_seed(Seed{1109}, 100 * n + 10 * s + detected));
                const double eta = 0.7;
                // Direct enumeration of the detected column subsets.
                double direct = 0.0;
                for (SubsetMask k : combinations(static_cast<int>(n), static_cast<int>(detected))) {
                    const auto rows = mask_indices(full_mask(static_cast<int>(detected)));
                    direct += std::norm(permanent_naive(submatrix(y, rows, mask_indices(k))));
                }
                direct *= std::pow(eta, static_cast<double>(detected)) *
                          std::pow(1.0 - eta, static_cast<double>(n - detected)) /
                          factorial(static_cast<int>(detected));
                const double via_loss = q_loss(eta, detected, y).value;
                const double via_dist = q_loss_dist(1.0, eta, detected, y).value;
                worst_loss = std::max({worst_loss, std::abs(via_loss - direct) / direct,
                                       std::abs(via_dist - direct) / direct});
            }
        }
    }
    return {worst_dist <= 1e-12 && worst_loss <= 1e-12,
            "max rel diff eta^N identity " + sci(worst_dist) + ", x=1 subset enumeration " + sci(worst_loss) +
                " (limit 1e-12)"};
}

Verdict sampler() {
    const auto u = sample_haar_unitary(6, Seed{1010});
    bool ok = true;
    std::ostringstream detail;
    for (double x : {0.0, 0.5, 1.0}) {
        const auto exact = exact_distribution(u, x, 3, 6);
        KahanSum total;
        for (const auto& [pattern, p] : exact) {
            total.add(p);
        }
        const BosonSampler s(u, x, 3);
        const double tv = tv_distance(empirical_distribution(s.sample_batch(100000, derive_seed(Seed{1110}, x * 10))),
                                      exact);
        ok = ok && std::abs(total.value() - 1.0) <= 1e-9 && tv <= 0.02;
        detail << "x=" << x << ": tv " << sci(tv) << ", |sum-1| " << sci(std::abs(total.value() - 1.0)) << "; ";
    }
    const double h = 1.0 / std::sqrt(2.0);
    const ComplexMatrix bs{{Complex(h, 0.0), Complex(h, 0.0)}, {Complex(h, 0.0), Complex(-h, 0.0)}};
    const auto hom = empirical_distribution(BosonSampler(bs, 1.0, 2).sample_batch(10000, Seed{1210}));
    const auto it = hom.find(make_outcome({0, 1}));
    const double coincidence = it == hom.end() ? 0.0 : it->second;
    ok = ok && coincidence <= 0.005;
    detail << "HOM coincidence at x=1: " << sci(coincidence) << " (limit 0.005)";
    return {ok, detail.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"prob", "--gen", "5", "--seed", "11", "--x", "0,0.3,0.7,1", "--l", "2,4"},
        {"prob", "--gen", "8", "--seed", "12", "--x", "0,1", "--format", "json"},
        {"reduce", "--gen", "8", "--l", "8", "--c-min", "0.3", "--trials", "100"},
        {"reduce", "--gen", "8", "--l", "6", "--oracle", "uniform", "--eps-fraction", "1e-3", "--trials", "200"},
        {"lemma1", "--gen", "8", "--x", "0.875,0.75", "--l", "4,6", "--delta", "0.2", "--trials", "500"},
        {"bounds"},
        {"sample", "--photons", "3", "--modes", "6", "--x", "0,0.5,1", "--trials", "100000"},
        {"loss", "--gen", "6", "--x", "0,0.4,1", "--eta", "0.3,0.9"},
    };
    const auto dir = std::filesystem::temp_directory_path() / "noisyboson_acceptance";
    std::filesystem::create_directories(dir);
    int identical = 0;
    std::string mismatch;
    std::ostringstream sink;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        std::string outputs[2];
        const char* threads[2] = {"1", "4"};
        for (int t = 0; t < 2; ++t) {
            const auto path = dir / ("cmd" + std::to_string(c) + "_t" + threads[t]);
            auto args = commands[c];
            args.insert(args.end(), {"--threads", threads[t], "--out", path.string()});
            const int code = cli::run(args, sink, sink);
            outputs[t] = code == cli::kOk ? slurp(path) : "exit " + std::to_string(code);
            std::filesystem::remove(path);
        }
        if (outputs[0] == outputs[1] && !outputs[0].empty() && outputs[0].rfind("exit ", 0) != 0) {
            ++identical;
        } else if (mismatch.empty()) {
            mismatch = "; differs: " + commands[c].front() + " #" + std::to_string(c);
        }
    }
    std::filesystem::remove(dir);
    return {identical == static_cast<int>(commands.size()),
            std::to_string(identical) + "/" + std::to_string(commands.size()) +
                " commands byte-identical at --threads 1 vs 4" + mismatch};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "formula equivalence", 30, formula_equivalence},
        {2, "endpoint identities", 60, endpoint_identities},
        {3, "expectation identity", 600, expectation_identity},
        {4, "truncation error lemma", 1200, truncation_lemma},
        {5, "chernoff dominance", 1, chernoff_dominance},
        {6, "exact-oracle reduction", 300, exact_reduction},
        {7, "noisy-oracle reduction", 600, noisy_reduction},
        {8, "parameter constants", 1, constants_audit},
        {9, "loss identities", 60, loss_identities},
        {10, "sampler", 300, sampler},
        {11, "determinism", 3600, determinism},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }

    int failed = 0;
    int ran = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) {
            continue;
        }
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = v.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] criterion %2d %-24s %s; %.2f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), secs, c.time_limit_s, in_time ? "" : " TIME EXCEEDED");
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::cerr << "no criterion " << only << '\n';
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
