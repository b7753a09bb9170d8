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

// Fixed matrices shared by the unit tests. Reference values derived from them
// come from oracle/generate.py (40-digit mpmath) and are frozen in the tests.

#include <algorithm>
#include <cmath>

#include "noisyboson/matrix.hpp"

namespace fixtures {

using noisyboson::Complex;
using noisyboson::ComplexMatrix;

inline ComplexMatrix a3() {
    return ComplexMatrix{{Complex(0.3, 0.6), Complex(-1.1, 0.0), Complex(0.7, -0.2)},
                         {Complex(0.5, -0.3), Complex(0.2, 1.2), Complex(-0.4, 0.4)},
                         {Complex(-0.9, 0.05), Complex(0.8, -0.7), Complex(0.1, 0.9)}};
}

inline ComplexMatrix a4() {
    return ComplexMatrix{{Complex(0.25, -0.5), Complex(1.0, 0.3), Complex(-0.6, 0.1), Complex(0.2, 0.8)},
                         {Complex(-0.3, 0.7), Complex(0.4, -0.2), Complex(0.9, 0.6), Complex(-1.2, 0.0)},
                         {Complex(0.8, 0.1), Complex(-0.5, -0.9), Complex(0.3, 0.3), Complex(0.6, -0.4)},
                         {Complex(0.1, 1.1), Complex(0.7, 0.2), Complex(-0.8, -0.6), Complex(0.5, 0.5)}};
}

inline ComplexMatrix b23() {
    return ComplexMatrix{{Complex(0.4, -0.1), Complex(-0.7, 0.5), Complex(1.0, 0.2)},
                         {Complex(0.3, 0.9), Complex(0.6, -0.8), Complex(-0.2, 0.1)}};
}

inline ComplexMatrix ones(std::size_t n) { return ComplexMatrix(n, n, Complex(1.0, 0.0)); }

inline ComplexMatrix beamsplitter() {
    const double h = 0.70710678118654752440;
    return ComplexMatrix{{Complex(h, 0.0), Complex(h, 0.0)}, {Complex(h, 0.0), Complex(-h, 0.0)}};
}

inline bool close(double a, double b, double rel) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
}

} // namespace fixtures
