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

#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "noisyboson/combinatorics.hpp"
#include "noisyboson/matrix_io.hpp"
#include "noisyboson/rng.hpp"

using namespace noisyboson;

TEST_CASE("matrix construction guards") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
    CHECK_THROWS_AS((RealMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    const auto id = ComplexMatrix::identity(3);
    CHECK(id(1, 1) == Complex(1.0));
    CHECK(id(0, 2) == Complex(0.0));
}

TEST_CASE("submatrix selects designated entries") {
    ComplexMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            m(r, c) = Complex(10.0 * r + c, 0.0);
        }
    }
    const std::vector<std::size_t> rows{0, 2};
    const std::vector<std::size_t> cols{1, 3};
    const auto s = submatrix(m, rows, cols);
    CHECK(s == ComplexMatrix{{Complex(1.0), Complex(3.0)}, {Complex(21.0), Complex(23.0)}});

    const std::vector<std::size_t> all{0, 1, 2, 3};
    CHECK(submatrix(m, all, all) == m);

    const auto e = submatrix(m, {}, {});
    CHECK(e.rows() == 0);
    CHECK(e.cols() == 0);

    const std::vector<std::size_t> dup{1, 1};
    const std::vector<std::size_t> out{0, 4};
    CHECK_THROWS_AS(submatrix(m, dup, cols), IndexError);
    CHECK_THROWS_AS(submatrix(m, out, cols), IndexError);
    CHECK(gather_rows_cols(m, dup, cols).rows() == 2);
}

TEST_CASE("require_finite rejects NaN") {
    ComplexMatrix m(2, 2, Complex(1.0));
    m(1, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(require_finite(m), NumericalError);
}

TEST_CASE("combinatorics") {
    CHECK(binomial(10, 3) == 120.0);
    CHECK(binomial(5, 7) == 0.0);
    CHECK(factorial(6) == 720.0);
    CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
    CHECK(combinations(4, 2).size() == 6);
    CHECK(combinations(4, 2).front() == 0b0011U);
    CHECK(combinations(4, 2).back() == 0b1100U);
    CHECK(mask_indices(0b1010U) == std::vector<std::size_t>{1, 3});
    CHECK(binomial_weight(10, 2, 0.5) == doctest::Approx(45.0 / 1024.0).epsilon(1e-15));

    const std::vector<double> terms{std::log(1e-300), std::log(3e-300)};
    CHECK(log_sum_exp(terms) == doctest::Approx(std::log(4e-300)).epsilon(1e-14));

    KahanSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) {
        s.add(1e-16);
    }
    CHECK(s.value() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}

TEST_CASE("rng streams are reproducible and independent") {
    Rng a(Seed{7});
    Rng b(Seed{7});
    for (int i = 0; i < 10; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(derive_seed(Seed{7}, 0).value != derive_seed(Seed{7}, 1).value);
    CHECK(derive_seed(Seed{7}, 0).value != derive_seed(Seed{8}, 0).value);

    Rng r(Seed{3});
    double sum = 0.0;
    double sum_sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto [re, im] = r.complex_gaussian();
        const Complex z(re, im);
        sum += std::norm(z);
        sum_sq += std::norm(z) * std::norm(z);
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    // |z|^2 is Exp(1): mean 1, variance 1.
    CHECK(sum / n == doctest::Approx(1.0).epsilon(5.0 / std::sqrt(n)));
    CHECK(sum_sq / n == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("matrix json round trip is bit exact") {
    const auto m = fixtures::a4();
    const auto text = dump_matrix(m);
    CHECK(parse_matrix(text) == m);

    ComplexMatrix tricky(1, 2);
    tricky(0, 0) = Complex(0.1 + 0.2, -1e-310);
    tricky(0, 1) = Complex(1.0 / 3.0, 6.02214076e23);
    CHECK(parse_matrix(dump_matrix(tricky)) == tricky);

    const auto path = std::filesystem::temp_directory_path() / "noisyboson_core_roundtrip.json";
    write_matrix_file(path, m);
    CHECK(read_matrix_file(path) == m);
    std::filesystem::remove(path);
}

TEST_CASE("matrix json diagnostics") {
    CHECK_THROWS_AS(parse_matrix("{\"rows\": 1, \"cols\": 1, \"re\": [[1]]"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"rows": 1, "cols": 1, "re": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"rows": 1, "cols": 2, "re": [[1]], "im": [[0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"rows": 0, "cols": 0, "re": [], "im": []})"), DimensionError);
    try {
        parse_matrix("{\n\"rows\": 1,\n\"cols\" 1}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        parse_matrix(R"({"rows": 2, "cols": 2, "re": [[1, 2], [3]], "im": [[0, 0], [0, 0]]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("re") != std::string::npos);
    }
}

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
