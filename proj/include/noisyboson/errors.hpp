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

#include <stdexcept>
#include <string>

namespace noisyboson {

/// Shape mismatch: non-square where square is required, zero dimension, n > N.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Index set out of range, unsorted or with duplicates.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Request exceeds a desk-scale cost guard.
class RefusalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed (e.g. a probability came out clearly negative).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message names the offending field or line.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace noisyboson
