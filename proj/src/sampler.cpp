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

#include "noisyboson/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>

#include "noisyboson/errors.hpp"
#include "noisyboson/matrix_io.hpp"
#include "noisyboson/permanent.hpp"
#include "noisyboson/randmat.hpp"

namespace noisyboson {

namespace {

constexpr double kUnitarityTolerance = 1e-8;

void check_limits(const ComplexMatrix& u, double x, int photons) {
    if (!u.is_square()) {
        throw DimensionError("sampler: unitary must be square");
    }
    const int modes = static_cast<int>(u.rows());
    if (photons < 1 || photons > modes) {
        throw DimensionError("sampler: need 1 <= N <= M, got N = " + std::to_string(photons) +
                             ", M = " + std::to_string(modes));
    }
    if (photons > kMaxSamplerPhotons || modes > kMaxSamplerModes) {
        throw RefusalError("sampler: enumeration limited to N <= 6, M <= 12");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("sampler: x must lie in [0, 1]");
    }
    require_finite(u);
    if (unitarity_defect(u) > kUnitarityTolerance) {
        throw DomainError("sampler: matrix is not unitary");
    }
}

// Nondecreasing sequences of length `size` over [0, modes), lexicographic.
std::vector<std::vector<int>> multisets(int modes, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(size), 0);
    while (true) {
        out.push_back(cur);
        int pos = size - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == modes - 1) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        const int v = cur[static_cast<std::size_t>(pos)] + 1;
        for (int i = pos; i < size; ++i) {
            cur[static_cast<std::size_t>(i)] = v;
        }
    }
    return out;
}

double multiplicity(const std::vector<int>& sorted) {
    double mu = 1.0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            mu *= factorial(static_cast<int>(run));
            run = 1;
        }
    }
    return mu;
}

std::vector<int> merge_modes(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

double subset_weight(double x, int photons, int in_subset) {
    return std::pow(x, in_subset) * std::pow(1.0 - x, photons - in_subset);
}

} // namespace

OutcomePattern make_outcome(std::vector<int> modes) {
    std::sort(modes.begin(), modes.end());
    OutcomePattern p;
    p.multiplicity_product = multiplicity(modes);
    p.modes = std::move(modes);
    return p;
}

std::string outcome_label(const OutcomePattern& p) {
    std::string s;
    for (std::size_t i = 0; i < p.modes.size(); ++i) {
        if (i) {
            s += '-';
        }
        s += std::to_string(p.modes[i]);
    }
    return s;
}

std::vector<std::pair<OutcomePattern, double>> interference_distribution(const ComplexMatrix& unitary,
                                                                         SubsetMask photon_subset) {
    const int modes = static_cast<int>(unitary.rows());
    const std::vector<std::size_t> cols = mask_indices(photon_subset);
    const int size = static_cast<int>(cols.size());
    std::vector<std::pair<OutcomePattern, double>> out;
    if (size == 0) {
        out.emplace_back(OutcomePattern{}, 1.0);
        return out;
    }
    KahanSum total;
    for (auto& t : multisets(modes, size)) {
        const std::vector<std::size_t> rows(t.begin(), t.end());
        const double w = std::norm(permanent_complex(gather_rows_cols(unitary, rows, cols))) / multiplicity(t);
        total.add(w);
        out.emplace_back(make_outcome(std::move(t)), w);
    }
    const double norm = total.value();
    if (!(norm > 0.0)) {
        throw NumericalError("interference_distribution: zero total weight");
    }
    for (auto& entry : out) {
        entry.second /= norm;
    }
    return out;
}

std::size_t BosonSampler::Categorical::draw(Rng& rng) const {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

BosonSampler::BosonSampler(const ComplexMatrix& unitary, double x, int photons)
    : photons_(photons), modes_(static_cast<int>(unitary.rows())), x_(x) {
    check_limits(unitary, x, photons);
    for (int i = 0; i < photons_; ++i) {
        Categorical c;
        double acc = 0.0;
        for (int m = 0; m < modes_; ++m) {
            acc += std::norm(unitary(static_cast<std::size_t>(m), static_cast<std::size_t>(i)));
            c.outcomes.push_back({m});
            c.cdf.push_back(acc);
        }
        classical_.push_back(std::move(c));
    }
    for (SubsetMask mask = 0; mask <= full_mask(photons_); ++mask) {
        Categorical c;
        double acc = 0.0;
        for (auto& [pattern, p] : interference_distribution(unitary, mask)) {
            acc += p;
            c.outcomes.push_back(pattern.modes);
            c.cdf.push_back(acc);
        }
        interference_.push_back(std::move(c));
    }
}

OutcomePattern BosonSampler::sample(Seed seed) const {
    Rng rng(seed);
    SubsetMask subset = 0;
    for (int i = 0; i < photons_; ++i) {
        if (rng.bernoulli(x_)) {
            subset |= SubsetMask{1} << i;
        }
    }
    std::vector<int> modes;
    for (int i = 0; i < photons_; ++i) {
        if (!(subset >> i & 1U)) {
            const auto& c = classical_[static_cast<std::size_t>(i)];
            modes.push_back(c.outcomes[c.draw(rng)].front());
        }
    }
    const auto& inter = interference_[subset];
    const auto& picked = inter.outcomes[inter.draw(rng)];
    modes.insert(modes.end(), picked.begin(), picked.end());
    return make_outcome(std::move(modes));
}

std::vector<OutcomePattern> BosonSampler::sample_batch(std::size_t count, Seed seed, const Exec& exec) const {
    std::vector<OutcomePattern> out(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) num_threads(exec.threads)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        out[static_cast<std::size_t>(t)] = sample(derive_seed(seed, static_cast<std::uint64_t>(t)));
    }
    return out;
}

OutcomePattern sample_outcome(const ComplexMatrix& unitary, double x, int photons, Seed seed) {
    return BosonSampler(unitary, x, photons).sample(seed);
}

Distribution exact_distribution(const ComplexMatrix& unitary, double x, int photons, int modes) {
    check_limits(unitary, x, photons);
    if (static_cast<int>(unitary.rows()) != modes) {
        throw DimensionError("exact_distribution: M does not match the unitary");
    }
    Distribution out;
    for (SubsetMask mask = 0; mask <= full_mask(photons); ++mask) {
        const int size = std::popcount(mask);
        const double weight = subset_weight(x, photons, size);
        if (weight == 0.0) {
            continue;
        }
        // Classical photons: product of independent categoricals, folded one photon at a time.
        std::map<std::vector<int>, double> classical{{{}, 1.0}};
        for (int i = 0; i < photons; ++i) {
            if (mask >> i & 1U) {
                continue;
            }
            std::map<std::vector<int>, double> next;
            for (const auto& [ms, p] : classical) {
                for (int m = 0; m < modes; ++m) {
                    const double pm = std::norm(unitary(static_cast<std::size_t>(m), static_cast<std::size_t>(i)));
                    next[merge_modes(ms, {m})] += p * pm;
                }
            }
            classical = std::move(next);
        }
        for (const auto& [pattern, pi] : interference_distribution(unitary, mask)) {
            for (const auto& [ms, pc] : classical) {
                out[make_outcome(merge_modes(pattern.modes, ms))] += weight * pi * pc;
            }
        }
    }
    return out;
}

Distribution empirical_distribution(const std::vector<OutcomePattern>& samples) {
    Distribution d;
    if (samples.empty()) {
        return d;
    }
    for (const auto& s : samples) {
        d[s] += 1.0;
    }
    for (auto& [pattern, p] : d) {
        p /= static_cast<double>(samples.size());
    }
    return d;
}

double tv_distance(const Distribution& p, const Distribution& q) {
    KahanSum sum;
    for (const auto& [pattern, pp] : p) {
        const auto it = q.find(pattern);
        sum.add(std::abs(pp - (it == q.end() ? 0.0 : it->second)));
    }
    for (const auto& [pattern, qq] : q) {
        if (!p.contains(pattern)) {
            sum.add(std::abs(qq));
        }
    }
    return 0.5 * sum.value();
}

std::vector<std::string> distribution_csv_header() { return {"outcome", "probability"}; }

std::vector<std::vector<std::string>> distribution_csv_rows(const Distribution& d) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(d.size());
    for (const auto& [pattern, p] : d) {
        rows.push_back({outcome_label(pattern), format_double(p)});
    }
    return rows;
}

nlohmann::ordered_json to_json(const Distribution& d) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [pattern, p] : d) {
        nlohmann::ordered_json e;
        e["modes"] = pattern.modes;
        e["multiplicity_product"] = pattern.multiplicity_product;
        e["probability"] = p;
        arr.push_back(std::move(e));
    }
    return arr;
}

} // namespace noisyboson
