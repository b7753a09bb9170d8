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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "noisyboson/bounds.hpp"
#include "noisyboson/combinatorics.hpp"
#include "noisyboson/errors.hpp"
#include "noisyboson/matrix_io.hpp"
#include "noisyboson/noisyprob.hpp"
#include "noisyboson/randmat.hpp"
#include "noisyboson/reduction.hpp"
#include "noisyboson/report.hpp"
#include "noisyboson/sampler.hpp"

namespace noisyboson::cli {

namespace {

using Row = std::vector<std::string>;
using nlohmann::ordered_json;

struct RunConfig {
    std::string matrix_path;
    std::optional<int> gen;
    std::uint64_t seed = 0;
    std::vector<double> x;
    std::vector<int> l;
    double c_min = 0.5;
    std::optional<double> kappa;
    std::optional<double> lambda;
    double eps0 = 0.1;
    double delta0 = 0.1;
    std::string oracle = "exact";
    std::optional<double> eps;
    std::optional<double> eps_fraction;
    std::optional<double> delta;
    double threshold = 0.99;
    std::size_t trials = 0;
    int threads = 1;
    std::string out;
    std::string format = "csv";

    std::vector<int> sizes;
    std::vector<int> ks;
    std::vector<double> eta;
    std::optional<int> detected;
    int photons = 3;
    int modes = 6;
};

struct Output {
    Row header;
    std::vector<Row> rows;
    std::vector<std::string> trailer; // CSV comment lines
    ordered_json json;
    int exit_code = kOk;
};

std::string fmt(double v) { return format_double(v); }

Exec exec_of(const RunConfig& cfg) { return Exec{cfg.threads}; }

ComplexMatrix load_matrix(const RunConfig& cfg, std::size_t rows, std::size_t cols, Seed seed) {
    if (!cfg.matrix_path.empty()) {
        return read_matrix_file(cfg.matrix_path);
    }
    return sample_gaussian_matrix(rows, cols, seed, exec_of(cfg));
}

int require_size(const RunConfig& cfg) {
    if (!cfg.matrix_path.empty()) {
        return static_cast<int>(read_matrix_file(cfg.matrix_path).cols());
    }
    if (!cfg.gen) {
        throw DomainError("need a matrix source: --matrix PATH or --gen N");
    }
    if (*cfg.gen < 1) {
        throw DimensionError("--gen N needs N >= 1");
    }
    return *cfg.gen;
}

Output cmd_prob(const RunConfig& cfg) {
    const int n = require_size(cfg);
    const ComplexMatrix x_matrix = load_matrix(cfg, static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                                               Seed{cfg.seed});
    const FixedJTable table = FixedJTable::compute(x_matrix, exec_of(cfg));
    const std::vector<double> grid = cfg.x.empty() ? std::vector<double>{0.0, 0.5, 1.0} : cfg.x;
    const bool with_permpair = n <= 5;

    Output o;
    o.header = {"x", "q_binomial", "q_permpair"};
    for (int l : cfg.l) {
        o.header.push_back("q_truncated_l" + std::to_string(l));
        o.header.push_back("f_poly_l" + std::to_string(l));
    }
    o.json["command"] = "prob";
    o.json["N"] = n;
    o.json["log_scale_factor"] = log_factorial(n);
    auto rows = ordered_json::array();
    for (double x : grid) {
        NoiseParams{x, 1.0}.validate();
        const double qb = q_noisy_binomial(x, table).value;
        Row row{fmt(x), fmt(qb)};
        ordered_json jr;
        jr["x"] = x;
        jr["q_binomial"] = qb;
        if (with_permpair) {
            const double qp = q_noisy_permpair(x, x_matrix).value;
            row.push_back(fmt(qp));
            jr["q_permpair"] = qp;
        } else {
            row.emplace_back();
            jr["q_permpair"] = nullptr;
        }
        auto trunc = ordered_json::array();
        for (int l : cfg.l) {
            const double qt = q_truncated(l, x, table).value;
            ordered_json jt;
            jt["l"] = l;
            jt["q_truncated"] = qt;
            row.push_back(fmt(qt));
            if (x > 0.0) {
                const double f = f_poly_eval(l, x, table);
                row.push_back(fmt(f));
                jt["f_poly"] = f;
            } else {
                row.emplace_back();
                jt["f_poly"] = nullptr;
            }
            trunc.push_back(std::move(jt));
        }
        jr["truncated"] = std::move(trunc);
        o.rows.push_back(std::move(row));
        rows.push_back(std::move(jr));
    }
    o.json["rows"] = std::move(rows);
    return o;
}

Output cmd_reduce(const RunConfig& cfg) {
    const int n = require_size(cfg);
    ParamOverrides overrides;
    overrides.kappa = cfg.kappa;
    overrides.lambda = cfg.lambda;
    if (!cfg.l.empty()) {
        if (cfg.l.size() != 1) {
            throw DomainError("reduce takes a single --l");
        }
        overrides.l = cfg.l.front();
    }
    const ReductionParams params = make_params(cfg.c_min, n, cfg.eps0, cfg.delta0, overrides);

    OracleSpec spec;
    spec.mode = parse_oracle_mode(cfg.oracle);
    if (cfg.eps) {
        spec.eps = *cfg.eps;
    } else if (cfg.eps_fraction) {
        spec.eps = *cfg.eps_fraction * kondo_inverted_eps(params);
    } else {
        spec.eps = params.eps;
    }
    spec.delta = cfg.delta.value_or(params.delta);
    spec.validate();
    const std::size_t trials = cfg.trials == 0 ? 100 : cfg.trials;

    Output o;
    o.header = {"seed", "N", "l", "c_min", "kappa", "eps", "delta", "abs_error", "kondo_budget", "success"};
    o.json["command"] = "reduce";
    o.json["params"] = to_json(params);
    o.json["oracle"] = {{"mode", to_string(spec.mode)}, {"eps", spec.eps}, {"delta", spec.delta}};
    auto runs = ordered_json::array();
    std::size_t successes = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = cfg.seed + i;
        const ComplexMatrix x_matrix =
            load_matrix(cfg, static_cast<std::size_t>(n), static_cast<std::size_t>(n), Seed{s});
        OracleSpec run_spec = spec;
        run_spec.seed = derive_seed(Seed{s}, 1);
        const ReductionResult r = estimate_permanent_sq(x_matrix, run_spec, params, exec_of(cfg));
        successes += r.success ? 1 : 0;
        o.rows.push_back({std::to_string(s), std::to_string(n), std::to_string(params.l), fmt(params.c_min),
                          fmt(params.kappa), fmt(spec.eps), fmt(spec.delta), fmt(r.abs_error),
                          fmt(r.kondo_budget), r.success ? "1" : "0"});
        ordered_json jr;
        jr["seed"] = s;
        jr["result"] = to_json(r);
        runs.push_back(std::move(jr));
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(trials);
    o.json["runs"] = std::move(runs);
    o.json["success_rate"] = rate;
    o.json["threshold"] = cfg.threshold;
    o.trailer.push_back("# success_rate," + fmt(rate) + "," + std::to_string(successes) + "/" +
                        std::to_string(trials) + ",threshold," + fmt(cfg.threshold));
    o.exit_code = rate >= cfg.threshold ? kOk : kNumerical;
    return o;
}

Output cmd_lemma1(const RunConfig& cfg) {
    if (!cfg.gen) {
        throw DomainError("lemma1 needs --gen N");
    }
    const int n = *cfg.gen;
    const std::vector<double> xs = cfg.x.empty() ? std::vector<double>{1.0 - 1.0 / n, 1.0 - 2.0 / n} : cfg.x;
    const std::vector<int> ls = cfg.l.empty() ? std::vector<int>{n / 2} : cfg.l;
    const double delta = cfg.delta.value_or(0.2);
    const std::size_t trials = cfg.trials == 0 ? 500 : cfg.trials;

    Output o;
    o.header = tail_report_csv_header();
    o.json["command"] = "lemma1";
    auto reports = ordered_json::array();
    for (double x : xs) {
        for (int l : ls) {
            const TailReport r = verify_lemma1(n, x, l, delta, trials, Seed{cfg.seed}, exec_of(cfg));
            o.rows.push_back(tail_report_csv_row(r));
            reports.push_back(to_json(r));
        }
    }
    o.json["reports"] = std::move(reports);
    return o;
}

Output cmd_bounds(const RunConfig& cfg) {
    const std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{8, 12, 16, 24} : cfg.sizes;
    const std::vector<int> ks = cfg.ks.empty() ? std::vector<int>{1, 2, 3} : cfg.ks;

    Output o;
    o.header = {"N", "x", "l", "exact_tail", "chernoff", "chernoff_general", "dominated"};
    o.json["command"] = "bounds";
    auto rows = ordered_json::array();
    std::size_t total = 0;
    std::size_t dominated = 0;
    for (int n : sizes) {
        for (int k : ks) {
            if (k < 1 || k >= n) {
                throw DomainError("bounds: need 1 <= k < N");
            }
            const double x = 1.0 - static_cast<double>(k) / n;
            std::vector<int> ls = cfg.l;
            if (ls.empty()) {
                for (int l = k + 1; l <= n / 2; ++l) {
                    ls.push_back(l);
                }
            }
            for (int l : ls) {
                const double tail = binomial_tail(n, x, l);
                const double bound = chernoff_tail_bound(n, x, l);
                const double general = chernoff_tail_bound_general(n, x, l);
                const bool ok = tail <= bound;
                ++total;
                dominated += ok ? 1 : 0;
                o.rows.push_back({std::to_string(n), fmt(x), std::to_string(l), fmt(tail), fmt(bound), fmt(general),
                                  ok ? "1" : "0"});
                rows.push_back({{"N", n}, {"x", x}, {"l", l}, {"exact_tail", tail}, {"chernoff", bound},
                                {"chernoff_general", general}, {"dominated", ok}});
            }
        }
    }
    o.json["rows"] = std::move(rows);
    o.json["dominated"] = dominated;
    o.json["total"] = total;
    o.trailer.push_back("# dominated," + std::to_string(dominated) + "/" + std::to_string(total));
    return o;
}

Output cmd_sample(const RunConfig& cfg) {
    const ComplexMatrix u = cfg.matrix_path.empty()
                                ? sample_haar_unitary(static_cast<std::size_t>(cfg.modes), Seed{cfg.seed})
                                : read_matrix_file(cfg.matrix_path);
    const int modes = static_cast<int>(u.rows());
    const std::vector<double> xs = cfg.x.empty() ? std::vector<double>{0.0, 0.5, 1.0} : cfg.x;
    const std::size_t trials = cfg.trials == 0 ? 100000 : cfg.trials;

    Output o;
    o.header = {"x", "outcome", "multiplicity_product", "exact", "empirical"};
    o.json["command"] = "sample";
    o.json["N"] = cfg.photons;
    o.json["M"] = modes;
    o.json["samples"] = trials;
    auto per_x = ordered_json::array();
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const double x = xs[xi];
        const BosonSampler sampler(u, x, cfg.photons);
        const Distribution exact = exact_distribution(u, x, cfg.photons, modes);
        const Distribution empirical = empirical_distribution(
            sampler.sample_batch(trials, derive_seed(Seed{cfg.seed}, xi + 1), exec_of(cfg)));
        Distribution support = exact;
        for (const auto& [pattern, p] : empirical) {
            support.try_emplace(pattern, 0.0);
        }
        KahanSum total;
        for (const auto& [pattern, p] : exact) {
            total.add(p);
        }
        for (const auto& [pattern, unused] : support) {
            const auto e = exact.find(pattern);
            const auto m = empirical.find(pattern);
            o.rows.push_back({fmt(x), outcome_label(pattern), fmt(pattern.multiplicity_product),
                              fmt(e == exact.end() ? 0.0 : e->second),
                              fmt(m == empirical.end() ? 0.0 : m->second)});
        }
        const double tv = tv_distance(exact, empirical);
        o.trailer.push_back("# tv_distance,x," + fmt(x) + "," + fmt(tv) + ",total," + fmt(total.value()));
        ordered_json jx;
        jx["x"] = x;
        jx["tv_distance"] = tv;
        jx["total_probability"] = total.value();
        jx["exact"] = to_json(exact);
        jx["empirical"] = to_json(empirical);
        per_x.push_back(std::move(jx));
    }
    o.json["distributions"] = std::move(per_x);
    return o;
}

Output cmd_loss(const RunConfig& cfg) {
    const int inputs = require_size(cfg);
    const int detected = cfg.detected.value_or(inputs);
    if (detected < 1 || detected > inputs) {
        throw DimensionError("loss: need 1 <= n <= N");
    }
    const ComplexMatrix x_matrix = load_matrix(cfg, static_cast<std::size_t>(detected),
                                               static_cast<std::size_t>(inputs), Seed{cfg.seed});
    const std::size_t n = x_matrix.rows();
    const std::vector<double> xs = cfg.x.empty() ? std::vector<double>{1.0} : cfg.x;
    const std::vector<double> etas = cfg.eta.empty() ? std::vector<double>{0.5} : cfg.eta;

    Output o;
    o.header = {"x", "eta", "n", "q_loss_dist", "q_loss", "eta_n_q_binomial"};
    o.json["command"] = "loss";
    o.json["N"] = x_matrix.cols();
    o.json["n"] = n;
    auto rows = ordered_json::array();
    for (double x : xs) {
        for (double eta : etas) {
            NoiseParams{x, eta}.validate();
            const double ld = q_loss_dist(x, eta, n, x_matrix, exec_of(cfg)).value;
            const double lq = q_loss(eta, n, x_matrix).value;
            Row row{fmt(x), fmt(eta), std::to_string(n), fmt(ld), fmt(lq)};
            ordered_json jr{{"x", x}, {"eta", eta}, {"n", n}, {"q_loss_dist", ld}, {"q_loss", lq}};
            if (n == x_matrix.cols()) {
                const double ref =
                    std::pow(eta, static_cast<double>(n)) * q_noisy_binomial(x, x_matrix, exec_of(cfg)).value;
                row.push_back(fmt(ref));
                jr["eta_n_q_binomial"] = ref;
            } else {
                row.emplace_back();
                jr["eta_n_q_binomial"] = nullptr;
            }
            o.rows.push_back(std::move(row));
            rows.push_back(std::move(jr));
        }
    }
    o.json["rows"] = std::move(rows);
    return o;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_matrix_source(CLI::App* sub, RunConfig& cfg) {
    auto* m = sub->add_option("--matrix", cfg.matrix_path, "Matrix JSON file");
    auto* g = sub->add_option("--gen", cfg.gen, "Generate an N x N Gaussian matrix from --seed");
    m->excludes(g);
}

void add_x(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--x", cfg.x, "Indistinguishability grid")->delimiter(',');
}

void add_l(CLI::App* sub, RunConfig& cfg) { sub->add_option("--l", cfg.l, "Truncation degree(s)")->delimiter(','); }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Partially distinguishable boson sampling toolkit", "noisyboson"};
    app.require_subcommand(1, 1);

    auto* prob = app.add_subcommand("prob", "Noisy output probabilities over an x grid");
    add_matrix_source(prob, cfg);
    add_x(prob, cfg);
    add_l(prob, cfg);
    add_common(prob, cfg);

    auto* reduce = app.add_subcommand("reduce", "Permanent recovery by polynomial extrapolation");
    add_matrix_source(reduce, cfg);
    add_l(reduce, cfg);
    reduce->add_option("--c-min", cfg.c_min)->capture_default_str();
    reduce->add_option("--kappa", cfg.kappa);
    reduce->add_option("--lambda", cfg.lambda);
    reduce->add_option("--eps0", cfg.eps0)->capture_default_str();
    reduce->add_option("--delta0", cfg.delta0)->capture_default_str();
    reduce->add_option("--oracle", cfg.oracle)
        ->check(CLI::IsMember({"exact", "uniform", "adversarial", "failing"}))
        ->capture_default_str();
    auto* eps = reduce->add_option("--eps", cfg.eps, "Oracle error (default: the derived eps)");
    reduce->add_option("--eps-fraction", cfg.eps_fraction, "Oracle error as a fraction of the Kondo-inverted eps")
        ->excludes(eps);
    reduce->add_option("--delta", cfg.delta, "Oracle failure probability");
    reduce->add_option("--trials", cfg.trials, "Number of seeds (default 100)");
    reduce->add_option("--threshold", cfg.threshold, "Required success rate")->capture_default_str();
    add_common(reduce, cfg);

    auto* lemma1 = app.add_subcommand("lemma1", "Truncation error experiment");
    lemma1->add_option("--gen", cfg.gen, "Matrix size N")->required();
    add_x(lemma1, cfg);
    add_l(lemma1, cfg);
    lemma1->add_option("--delta", cfg.delta, "Confidence parameter (default 0.2)");
    lemma1->add_option("--trials", cfg.trials, "Gaussian draws (default 500)");
    add_common(lemma1, cfg);

    auto* bounds = app.add_subcommand("bounds", "Binomial tail against the Chernoff bound");
    bounds->add_option("--sizes", cfg.sizes, "Photon numbers N")->delimiter(',');
    bounds->add_option("--k", cfg.ks, "Mean distinguishable photon counts")->delimiter(',');
    add_l(bounds, cfg);
    add_common(bounds, cfg);

    auto* sample = app.add_subcommand("sample", "Monte Carlo sampler against the exact distribution");
    sample->add_option("--matrix", cfg.matrix_path, "Unitary JSON file (default: Haar from --seed)");
    sample->add_option("--photons", cfg.photons)->capture_default_str();
    sample->add_option("--modes", cfg.modes)->capture_default_str();
    add_x(sample, cfg);
    sample->add_option("--trials", cfg.trials, "Samples per x (default 100000)");
    add_common(sample, cfg);

    auto* loss = app.add_subcommand("loss", "Loss and distinguishability probabilities");
    add_matrix_source(loss, cfg);
    add_x(loss, cfg);
    loss->add_option("--eta", cfg.eta, "Transmission grid")->delimiter(',');
    loss->add_option("--detected", cfg.detected, "Detected photons n (default N)");
    add_common(loss, cfg);

    std::vector<std::string> argv_storage{"noisyboson"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        Output o;
        if (*prob) {
            o = cmd_prob(cfg);
        } else if (*reduce) {
            o = cmd_reduce(cfg);
        } else if (*lemma1) {
            o = cmd_lemma1(cfg);
        } else if (*bounds) {
            o = cmd_bounds(cfg);
        } else if (*sample) {
            o = cmd_sample(cfg);
        } else {
            o = cmd_loss(cfg);
        }

        std::ostringstream text;
        if (cfg.format == "json") {
            text << o.json.dump(2) << '\n';
        } else {
            write_csv(text, o.header, o.rows);
            for (const auto& line : o.trailer) {
                text << line << '\n';
            }
        }
        if (cfg.out.empty()) {
            out << text.str();
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) {
                throw DomainError("cannot open output file " + cfg.out);
            }
            file << text.str();
        }
        return o.exit_code;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::logic_error& e) {
        // DimensionError, DomainError and IndexError all derive from logic_error.
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

} // namespace noisyboson::cli
