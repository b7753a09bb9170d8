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

#include "noisyboson/matrix_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace noisyboson {

namespace {

using nlohmann::json;

std::size_t read_dimension(const json& j, const char* field) {
    if (!j.contains(field)) {
        throw ParseError(std::string("matrix JSON: missing field \"") + field + "\"");
    }
    const json& v = j.at(field);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ParseError(std::string("matrix JSON: field \"") + field +
                         "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

const json& read_grid(const json& j, const char* field, std::size_t rows, std::size_t cols) {
    if (!j.contains(field)) {
        throw ParseError(std::string("matrix JSON: missing field \"") + field + "\"");
    }
    const json& grid = j.at(field);
    if (!grid.is_array() || grid.size() != rows) {
        throw ParseError(std::string("matrix JSON: field \"") + field + "\" must be an array of " +
                         std::to_string(rows) + " rows");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = grid[r];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError(std::string("matrix JSON: ") + field + "[" + std::to_string(r) +
                             "] must hold " + std::to_string(cols) + " numbers");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number()) {
                throw ParseError(std::string("matrix JSON: ") + field + "[" + std::to_string(r) +
                                 "][" + std::to_string(c) + "] is not a number");
            }
        }
    }
    return grid;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

} // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (const Complex& v : m.row(r)) {
            re_row.push_back(v.real());
            im_row.push_back(v.imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ParseError("matrix JSON: top level must be an object");
    }
    const std::size_t rows = read_dimension(j, "rows");
    const std::size_t cols = read_dimension(j, "cols");
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix JSON: rows and cols must be >= 1");
    }
    const json& re = read_grid(j, "re", rows, cols);
    const json& im = read_grid(j, "im", rows, cols);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
        }
    }
    require_finite(m);
    return m;
}

ComplexMatrix parse_matrix(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("matrix JSON: syntax error at line " +
                         std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    return matrix_from_json(j);
}

std::string dump_matrix(const ComplexMatrix& m) { return matrix_to_json(m).dump() + "\n"; }

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open matrix file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write matrix file " + path.string());
    }
    out << dump_matrix(m);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace noisyboson
