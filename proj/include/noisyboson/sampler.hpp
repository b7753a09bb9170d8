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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisyboson/combinatorics.hpp"
#include "noisyboson/matrix.hpp"
#include "noisyboson/rng.hpp"

namespace noisyboson {

inline constexpr int kMaxSamplerPhotons = 6;
inline constexpr int kMaxSamplerModes = 12;

/// Output modes in ascending order (one entry per photon) and the product of
/// the factorials of their repeat counts.
struct OutcomePattern {
    std::vector<int> modes;
    double multiplicity_product = 1.0;

    bool collision_free() const noexcept { return multiplicity_product == 1.0; }
    auto operator<=>(const OutcomePattern& other) const { return modes <=> other.modes; }
    bool operator==(const OutcomePattern& other) const { return modes == other.modes; }
};

/// Sorts the modes and fills in the multiplicity product.
OutcomePattern make_outcome(std::vector<int> modes);
/// "0-2-2"; the empty pattern prints as "".
std::string outcome_label(const OutcomePattern& p);

using Distribution = std::map<OutcomePattern, double>;

/// Photons enter modes 0..N-1 of an M x M unitary. Each photon is independently
/// indistinguishable with probability x; distinguishable photons scatter
/// classically with |U_{m,i}|^2, the rest interfere with weights
/// |Per U_{T,I}|^2 / mu(T) over multisets T.
///
/// The interference distributions of all 2^N photon subsets are tabulated once.
class BosonSampler {
  public:
    BosonSampler(const ComplexMatrix& unitary, double x, int photons);

    OutcomePattern sample(Seed seed) const;
    /// Sample i uses derive_seed(seed, i).
    std::vector<OutcomePattern> sample_batch(std::size_t count, Seed seed, const Exec& exec = {}) const;

    int photons() const noexcept { return photons_; }
    int modes() const noexcept { return modes_; }

  private:
    struct Categorical {
        std::vector<std::vector<int>> outcomes;
        std::vector<double> cdf;
        std::size_t draw(Rng& rng) const;
    };

    int photons_;
    int modes_;
    double x_;
    std::vector<Categorical> classical_;    // per photon, over single modes
    std::vector<Categorical> interference_; // per subset mask, over multisets
};

OutcomePattern sample_outcome(const ComplexMatrix& unitary, double x, int photons, Seed seed);

/// Interfering photons' distribution: multisets of size |I| in stars-and-bars
/// order with |Per U_{T,I}|^2 / mu(T), normalized by the computed total.
std::vector<std::pair<OutcomePattern, double>> interference_distribution(const ComplexMatrix& unitary,
                                                                         SubsetMask photon_subset);

/// Full output distribution, summed over all 2^N indistinguishable subsets.
Distribution exact_distribution(const ComplexMatrix& unitary, double x, int photons, int modes);

Distribution empirical_distribution(const std::vector<OutcomePattern>& samples);

/// Half the L1 distance; outcomes missing from one side count as probability 0.
double tv_distance(const Distribution& p, const Distribution& q);

std::vector<std::string> distribution_csv_header();
std::vector<std::vector<std::string>> distribution_csv_rows(const Distribution& d);
nlohmann::ordered_json to_json(const Distribution& d);

} // namespace noisyboson
