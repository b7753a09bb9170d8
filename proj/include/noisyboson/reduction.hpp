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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisyboson/matrix.hpp"
#include "noisyboson/noisyprob.hpp"
#include "noisyboson/rng.hpp"

namespace noisyboson {

inline constexpr double kDefaultKappa = 2.108;
inline constexpr double kDefaultLambda = 2.149;

/// Constants of the extrapolation reduction for one problem size N.
///
/// k ranges over [k_min, k_max] = [c_min, c_max] log N, the polynomial degree is
/// l = ceil(c_l log N) and Delta = (c_max - c_min)/(c_max + c_min) is the
/// half-width of the rescaled node interval.
struct ReductionParams {
    int N = 0;
    double c_min = 0.0;
    double kappa = kDefaultKappa;
    double lambda = kDefaultLambda;
    double c_max = 0.0;
    double c_l = 0.0;
    int l = 0;
    double Delta = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    double eps0 = 0.0;
    double delta0 = 0.0;
    /// Oracle budgets: eps = eps_constant * eps0^7.1 delta0^6.1 N^(-40 c_min), delta = delta0 / (2(l+1)).
    double eps = 0.0;
    double delta = 0.0;
    double eps_constant = 1.0;
    /// Truncation error at these constants, epsilon1_log(c_max, c_l, N, delta).
    double epsilon1 = 0.0;
    /// eps0 N^(-c_max - c_l(1 + log 1/Delta)) - epsilon1: the largest eps the
    /// error chain tolerates. Negative when truncation alone exhausts eps0.
    double eps_admissible = 0.0;

    /// Throws DomainError when an invariant (c_l > c_max > c_min > 0, Delta in (0,1), l > k_max) fails.
    void validate() const;
};

struct ParamOverrides {
    std::optional<double> kappa;
    std::optional<double> lambda;
    /// Forces the degree; c_l becomes l / log N.
    std::optional<int> l;
    std::optional<double> eps_constant;
};

/// Fills every field from c_min, N and the target budgets eps0, delta0.
/// Refuses when l > N: the sweep cannot evaluate a polynomial of higher degree than N.
ReductionParams make_params(double c_min, int N, double eps0, double delta0, const ParamOverrides& overrides = {});

struct Node {
    double k = 0.0;
    double x = 0.0;
};

/// l+1 equally spaced k_i in [k_min, k_max] and x_i = 1 - k_i / N, in increasing k.
std::vector<Node> interpolation_nodes(const ReductionParams& params, int N);

/// z(t) = ((k_max + k_min) / 2N)(t - 1) + 1. z(1) = 1, z(-Delta) = 1 - k_max/N, z(Delta) = 1 - k_min/N.
double rescale_z(double t, double k_min, double k_max, int N);
/// Inverse of rescale_z.
double unscale_z(double x, double k_min, double k_max, int N);

enum class OracleMode { exact, uniform_noise, adversarial_sign, failing };

std::string to_string(OracleMode mode);
OracleMode parse_oracle_mode(const std::string& name);

/// Error model of the simulated estimator, in q/N! units.
struct OracleSpec {
    OracleMode mode = OracleMode::exact;
    double eps = 0.0;
    double delta = 0.0;
    Seed seed{};

    void validate() const;
};

/// Stand-in for an average-case estimator of q(x, X), valid for x <= x_max.
///
/// exact            q(x, X)
/// uniform_noise    q + u,         u ~ U[-eps, eps]
/// adversarial_sign q + eps (-1)^i for node index i
/// failing          q + 1e3 eps with probability delta, otherwise uniform_noise
///
/// Node i draws from derive_seed(spec.seed, i), so answers do not depend on query order.
class SimulatedOracle {
  public:
    SimulatedOracle(OracleSpec spec, const ComplexMatrix& x_matrix, double x_max, const Exec& exec = {});
    SimulatedOracle(OracleSpec spec, FixedJTable table, double x_max);

    /// Answers are carried in long double: on the exact path the only error
    /// the extrapolation amplifies is the rounding of these values.
    struct Answer {
        long double value = 0.0L;
        bool failed = false;
    };

    Answer query(long double x, std::size_t node_index) const;
    const FixedJTable& table() const noexcept { return table_; }

  private:
    OracleSpec spec_;
    FixedJTable table_;
    double x_max_;
};

/// One-shot query; see SimulatedOracle.
double query_oracle(const OracleSpec& spec, double x, const ComplexMatrix& x_matrix, double x_max,
                    std::size_t node_index = 0);

struct InterpolationPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Value at `target` of the degree-(m-1) interpolant through m points.
/// Uses the first barycentric form l(t) sum_i w_i y_i / (t - x_i), which stays
/// backward stable when the target lies outside the nodes.
double lagrange_extrapolate(std::span<const InterpolationPoint> points, double target);

struct ExtendedPoint {
    long double x = 0.0L;
    long double y = 0.0L;
};
long double lagrange_extrapolate(std::span<const ExtendedPoint> points, long double target);

/// e^(l (1 + log 1/Delta)), the Kondo bound without the 1/sqrt(2 pi l) factor.
double amplification_factor(int l, double Delta);

/// Oracle eps that would make kondo_bound(eps e^k_max, l, Delta) equal eps0.
double kondo_inverted_eps(const ReductionParams& params);

struct NodeRecord {
    double k = 0.0;
    double x = 0.0;
    double t = 0.0;  ///< rescaled abscissa in [-Delta, Delta]
    double y = 0.0;  ///< oracle answer times x^(l-N)
    bool oracle_failed = false;
};

struct ReductionResult {
    double estimate = 0.0;
    double truth = 0.0;
    double abs_error = 0.0;
    double kondo_budget = 0.0;
    std::vector<NodeRecord> nodes;
    bool success = false;

    double eps_double_prime = 0.0;   ///< (eps + epsilon1) e^k_max
    double max_node_multiplier = 0.0; ///< max_i x_i^(l-N)
    std::size_t oracle_failures = 0;
};

/// Recovers |Per X|^2 / N! from oracle answers at x_i <= 1 - k_min/N by
/// extrapolating the degree-l polynomial x^(l-N) q^(l)(x, X) to x = 1.
ReductionResult estimate_permanent_sq(const ComplexMatrix& x_matrix, const OracleSpec& spec,
                                      const ReductionParams& params, const Exec& exec = {});

nlohmann::ordered_json to_json(const ReductionParams& p);
nlohmann::ordered_json to_json(const ReductionResult& r);

} // namespace noisyboson
