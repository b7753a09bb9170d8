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

#include "noisyboson/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "noisyboson/bounds.hpp"
#include "noisyboson/combinatorics.hpp"
#include "noisyboson/errors.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisyboson {

void ReductionParams::validate() const {
    if (!(c_min > 0.0 && c_max > c_min && c_l > c_max)) {
        throw DomainError("reduction params: need c_l > c_max > c_min > 0");
    }
    if (!(Delta > 0.0 && Delta < 1.0)) {
        throw DomainError("reduction params: Delta outside (0, 1)");
    }
    if (l < 1 || !(l > k_max)) {
        throw DomainError("reduction params: need l >= 1 and l > k_max");
    }
}

ReductionParams make_params(double c_min, int N, double eps0, double delta0, const ParamOverrides& overrides) {
    if (!(c_min > 0.0)) {
        throw DomainError("make_params: c_min must be > 0");
    }
    if (N < 3) {
        throw DomainError("make_params: N must be >= 3");
    }
    if (!(eps0 > 0.0 && eps0 < 1.0) || !(delta0 > 0.0 && delta0 < 1.0)) {
        throw DomainError("make_params: eps0 and delta0 must lie in (0, 1)");
    }
    ReductionParams p;
    p.N = N;
    p.c_min = c_min;
    p.kappa = overrides.kappa.value_or(kDefaultKappa);
    p.lambda = overrides.lambda.value_or(kDefaultLambda);
    p.eps_constant = overrides.eps_constant.value_or(1.0);
    if (!(p.kappa > 1.0) || !(p.lambda > 0.0)) {
        throw DomainError("make_params: need kappa > 1 and lambda > 0");
    }
    const double log_n = std::log(static_cast<double>(N));
    const double log_inv_budget = -std::log(eps0) - std::log(delta0);

    p.c_max = p.kappa * c_min;
    p.Delta = (p.kappa - 1.0) / (p.kappa + 1.0);
    p.k_min = c_min * log_n;
    p.k_max = p.c_max * log_n;
    if (overrides.l) {
        p.l = *overrides.l;
        p.c_l = p.l / log_n;
    } else {
        const double log_ratio = std::log((p.kappa + 1.0) / (p.kappa - 1.0));
        p.c_l = p.kappa * p.lambda * (5.0 + 3.0 * log_ratio) / 2.0 * c_min + 3.0 * log_inv_budget / log_n;
        p.l = static_cast<int>(std::ceil(p.c_l * log_n));
    }
    if (p.l > N) {
        std::ostringstream msg;
        msg << "make_params: degree l = " << p.l << " exceeds N = " << N
            << " (c_l = " << p.c_l << "); the polynomial cannot be evaluated at this size";
        throw RefusalError(msg.str());
    }
    p.eps0 = eps0;
    p.delta0 = delta0;
    p.delta = delta0 / (2.0 * (p.l + 1.0));
    p.eps = p.eps_constant * std::exp(7.1 * std::log(eps0) + 6.1 * std::log(delta0) - 40.0 * c_min * log_n);
    p.validate();
    p.epsilon1 = epsilon1_log(p.c_max, p.c_l, N, p.delta);
    p.eps_admissible =
        eps0 * std::exp(-(p.c_max + p.c_l * (1.0 + std::log(1.0 / p.Delta))) * log_n) - p.epsilon1;
    return p;
}

std::vector<Node> interpolation_nodes(const ReductionParams& params, int N) {
    if (params.l < 1) {
        throw DomainError("interpolation_nodes: l must be >= 1");
    }
    if (!(params.k_max > params.k_min) || N < 1) {
        throw DomainError("interpolation_nodes: need k_max > k_min and N >= 1");
    }
    const double step = (params.k_max - params.k_min) / params.l;
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(params.l) + 1);
    for (int i = 0; i <= params.l; ++i) {
        const double k = i == params.l ? params.k_max : params.k_min + i * step;
        const double x = 1.0 - k / N;
        if (!(x > 0.0)) {
            throw RefusalError("interpolation_nodes: x_" + std::to_string(i) +
                               " <= 0; N is too small for these constants");
        }
        nodes.push_back({k, x});
    }
    return nodes;
}

double rescale_z(double t, double k_min, double k_max, int N) {
    return (k_max + k_min) / (2.0 * N) * (t - 1.0) + 1.0;
}

double unscale_z(double x, double k_min, double k_max, int N) {
    return (x - 1.0) * (2.0 * N) / (k_max + k_min) + 1.0;
}

std::string to_string(OracleMode mode) {
    switch (mode) {
    case OracleMode::exact:
        return "exact";
    case OracleMode::uniform_noise:
        return "uniform";
    case OracleMode::adversarial_sign:
        return "adversarial";
    case OracleMode::failing:
        return "failing";
    }
    return "exact";
}

OracleMode parse_oracle_mode(const std::string& name) {
    if (name == "exact") {
        return OracleMode::exact;
    }
    if (name == "uniform" || name == "uniform-noise") {
        return OracleMode::uniform_noise;
    }
    if (name == "adversarial" || name == "adversarial-sign") {
        return OracleMode::adversarial_sign;
    }
    if (name == "failing") {
        return OracleMode::failing;
    }
    throw DomainError("unknown oracle mode '" + name + "'");
}

void OracleSpec::validate() const {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
        throw DomainError("oracle eps must be >= 0");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw DomainError("oracle delta must lie in [0, 1)");
    }
}

SimulatedOracle::SimulatedOracle(OracleSpec spec, const ComplexMatrix& x_matrix, double x_max, const Exec& exec)
    : SimulatedOracle(spec, FixedJTable::compute(x_matrix, exec), x_max) {}

SimulatedOracle::SimulatedOracle(OracleSpec spec, FixedJTable table, double x_max)
    : spec_(spec), table_(std::move(table)), x_max_(x_max) {
    spec_.validate();
}

SimulatedOracle::Answer SimulatedOracle::query(long double x, std::size_t node_index) const {
    // The slack only absorbs rounding between a node computed in long double and x_max in double.
    if (!(x > 0.0L) || x > x_max_ + 4.0L * std::numeric_limits<double>::epsilon()) {
        throw DomainError("oracle: x = " + std::to_string(static_cast<double>(x)) + " outside (0, " +
                          std::to_string(x_max_) + "]");
    }
    const long double exact = table_.mixture_extended(x);
    Rng rng(derive_seed(spec_.seed, node_index));
    const long double eps = spec_.eps;
    switch (spec_.mode) {
    case OracleMode::exact:
        return {exact, false};
    case OracleMode::uniform_noise:
        return {exact + rng.uniform(-spec_.eps, spec_.eps), false};
    case OracleMode::adversarial_sign:
        return {exact + ((node_index & 1U) ? -eps : eps), false};
    case OracleMode::failing:
        if (rng.bernoulli(spec_.delta)) {
            return {exact + 1e3L * eps, true};
        }
        return {exact + rng.uniform(-spec_.eps, spec_.eps), false};
    }
    return {exact, false};
}

double query_oracle(const OracleSpec& spec, double x, const ComplexMatrix& x_matrix, double x_max,
                    std::size_t node_index) {
    return static_cast<double>(SimulatedOracle(spec, x_matrix, x_max).query(x, node_index).value);
}

namespace {

template <typename T, typename Point>
T extrapolate(std::span<const Point> points, T target) {
    if (points.empty()) {
        throw DomainError("lagrange_extrapolate: need at least one point");
    }
    const std::size_t m = points.size();
    std::vector<T> weights(m, T{1});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                continue;
            }
            const T gap = points[i].x - points[j].x;
            if (gap == T{0}) {
                throw DomainError("lagrange_extrapolate: duplicate node");
            }
            weights[i] /= gap;
        }
    }
    T node_poly{1};
    T acc{0};
    for (std::size_t i = 0; i < m; ++i) {
        const T diff = target - points[i].x;
        if (diff == T{0}) {
            return points[i].y;
        }
        node_poly *= diff;
        acc += weights[i] * points[i].y / diff;
    }
    return node_poly * acc;
}

} // namespace

double lagrange_extrapolate(std::span<const InterpolationPoint> points, double target) {
    return extrapolate<double>(points, target);
}

long double lagrange_extrapolate(std::span<const ExtendedPoint> points, long double target) {
    return extrapolate<long double>(points, target);
}

double amplification_factor(int l, double Delta) {
    if (!(Delta > 0.0 && Delta < 1.0)) {
        throw DomainError("amplification_factor: Delta outside (0, 1)");
    }
    if (l < 0) {
        throw DomainError("amplification_factor: l must be >= 0");
    }
    return std::exp(l * (1.0 + std::log(1.0 / Delta)));
}

double kondo_inverted_eps(const ReductionParams& params) {
    return params.eps0 / (std::exp(params.k_max) * kondo_bound(1.0, params.l, params.Delta));
}

ReductionResult estimate_permanent_sq(const ComplexMatrix& x_matrix, const OracleSpec& spec,
                                      const ReductionParams& params, const Exec& exec) {
    if (!x_matrix.is_square()) {
        throw DimensionError("estimate_permanent_sq: X must be square");
    }
    const int n = static_cast<int>(x_matrix.rows());
    if (params.N != n) {
        throw DomainError("estimate_permanent_sq: params were built for N = " + std::to_string(params.N) +
                          ", matrix has N = " + std::to_string(n));
    }
    if (params.l > n) {
        throw RefusalError("estimate_permanent_sq: l exceeds N");
    }
    params.validate();

    const std::vector<Node> nodes = interpolation_nodes(params, n);
    const double x_max = 1.0 - params.k_min / n;
    const SimulatedOracle oracle(spec, x_matrix, x_max, exec);

    ReductionResult result;
    // x_i, t_i and y_i stay in long double until the extrapolated value is
    // formed: the Lebesgue constant at t = 1 is ~1e6 for l = 8, so one double
    // rounding per node would already cost ~1e-10 relative to max |y_i|.
    const long double half_width = (static_cast<long double>(params.k_max) + params.k_min) / (2.0L * n);
    std::vector<ExtendedPoint> points;
    points.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const long double x = 1.0L - static_cast<long double>(nodes[i].k) / n;
        const long double t = (x - 1.0L) / half_width + 1.0L;
        const auto answer = oracle.query(x, i);
        const long double multiplier = std::pow(x, params.l - n);
        const long double y = answer.value * multiplier;
        NodeRecord rec;
        rec.k = nodes[i].k;
        rec.x = nodes[i].x;
        rec.t = static_cast<double>(t);
        rec.y = static_cast<double>(y);
        rec.oracle_failed = answer.failed;
        if (!std::isfinite(rec.y)) {
            std::ostringstream msg;
            msg << "estimate_permanent_sq: node " << i << " (k = " << rec.k << ", x = " << rec.x
                << ") produced a non-finite value";
            throw NumericalError(msg.str());
        }
        result.max_node_multiplier = std::max(result.max_node_multiplier, static_cast<double>(multiplier));
        result.oracle_failures += answer.failed ? 1 : 0;
        points.push_back({t, y});
        result.nodes.push_back(rec);
    }

    result.estimate = static_cast<double>(lagrange_extrapolate(std::span<const ExtendedPoint>(points), 1.0L));
    result.truth = q_ideal(x_matrix).value;
    result.abs_error = std::abs(result.estimate - result.truth);
    result.eps_double_prime = (spec.eps + params.epsilon1) * std::exp(params.k_max);
    result.kondo_budget = kondo_bound(result.eps_double_prime, params.l, params.Delta) +
                          params.epsilon1 * result.max_node_multiplier;
    result.success = result.abs_error <= result.kondo_budget;
    return result;
}

nlohmann::ordered_json to_json(const ReductionParams& p) {
    nlohmann::ordered_json j;
    j["N"] = p.N;
    j["c_min"] = p.c_min;
    j["kappa"] = p.kappa;
    j["lambda"] = p.lambda;
    j["c_max"] = p.c_max;
    j["c_l"] = p.c_l;
    j["l"] = p.l;
    j["Delta"] = p.Delta;
    j["k_min"] = p.k_min;
    j["k_max"] = p.k_max;
    j["eps0"] = p.eps0;
    j["delta0"] = p.delta0;
    j["eps"] = p.eps;
    j["delta"] = p.delta;
    j["eps_constant"] = p.eps_constant;
    j["epsilon1"] = p.epsilon1;
    j["eps_admissible"] = p.eps_admissible;
    return j;
}

nlohmann::ordered_json to_json(const ReductionResult& r) {
    nlohmann::ordered_json j;
    j["estimate"] = r.estimate;
    j["truth"] = r.truth;
    j["abs_error"] = r.abs_error;
    j["kondo_budget"] = r.kondo_budget;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : r.nodes) {
        nodes.push_back({{"k", n.k}, {"x", n.x}, {"t", n.t}, {"y", n.y}, {"oracle_failed", n.oracle_failed}});
    }
    j["nodes"] = std::move(nodes);
    j["success"] = r.success;
    j["eps_double_prime"] = r.eps_double_prime;
    j["max_node_multiplier"] = r.max_node_multiplier;
    j["oracle_failures"] = r.oracle_failures;
    return j;
}

} // namespace noisyboson
