// Copyright 2026 The qdense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>

namespace qdense {

/**
 * Reference 3x3 encoding matrices of the two-pair, 3 x 2 scheme
 * (row-major, entries 0/+1/-1).
 *
 * `name` is the reference label U^r_{mn}. (r, m, n) is the label under
 * which encoding_operator reproduces the matrix. The reference branch-1
 * operators name m after the level |1> is sent to by subtraction, so
 * reference U^1_{10} is our m = 2 and U^1_{20} is our m = 1.
 */
struct ReferenceOperator {
    const char *name;
    std::size_t r;
    std::size_t m;
    std::size_t n;
    std::array<int, 9> entries;
};

inline constexpr std::array<ReferenceOperator, 9> kReferenceOperators{{
    {"U^0_00", 0, 0, 0, {1, 0, 0, 0, 1, 0, 0, 0, 1}},
    {"U^0_01", 0, 0, 1, {1, 0, 0, 0, -1, 0, 0, 0, 1}},
    {"U^0_10", 0, 1, 0, {0, 0, 1, 1, 0, 0, 0, 1, 0}},
    {"U^0_11", 0, 1, 1, {0, 0, 1, 1, 0, 0, 0, -1, 0}},
    {"U^0_20", 0, 2, 0, {0, 1, 0, 0, 0, 1, 1, 0, 0}},
    {"U^0_21", 0, 2, 1, {0, -1, 0, 0, 0, 1, 1, 0, 0}},
    {"U^1_00", 1, 0, 0, {1, 0, 0, 0, 1, 0, 0, 0, 1}},
    {"U^1_10", 1, 2, 0, {0, 1, 0, 1, 0, 0, 0, 0, 1}},
    {"U^1_20", 1, 1, 0, {1, 0, 0, 0, 0, 1, 0, 1, 0}},
}};

} // namespace qdense
