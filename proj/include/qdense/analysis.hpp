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

/**
 * @file
 * Closed-form information accounting. All quantities are in bits.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdense/channel.hpp"
#include "qdense/protocol.hpp"

namespace qdense {

struct BranchRow {
    std::vector<std::size_t> digits;
    double probability = 0.0;
    std::uint64_t message_count = 0;
    double log2_count = 0.0;
};

struct CapacityReport {
    ChannelSpec spec;
    std::vector<BranchRow> branch_rows; // lexicographic in r
    double average_information = 0.0;
    double classical_cost = 0.0;
    double maximal_information = 0.0;
};

struct SurfacePoint {
    double alpha01_sq = 0.0;
    double alpha02_sq = 0.0;
    double i_ave = 0.0;
};

/// prod_k p (q - r_k)
inline std::uint64_t branch_message_count(std::size_t p, std::size_t q,
                                          std::span<const std::size_t> branch) {
    std::uint64_t count = 1;
    for (auto r : branch) {
        if (r >= q) {
            throw std::out_of_range("branch_message_count: digit out of range");
        }
        count = detail::checked_mul(count, p * (q - r));
    }
    return count;
}

inline std::uint64_t branch_message_count(std::size_t p, std::size_t q,
                                          std::initializer_list<std::size_t> branch) {
    return branch_message_count(p, q,
                                std::span<const std::size_t>(branch.begin(), branch.size()));
}

/// sum_r P(r) log2 M(r)
inline double average_information(const ChannelSpec &spec) {
    double total = 0.0;
    for (const auto &b : branch_probabilities(spec)) {
        if (b.probability == 0.0) {
            continue;
        }
        total += b.probability * std::log2(double(branch_message_count(
                                     spec.sender_dim(), spec.receiver_dim(), b.digits)));
    }
    return total;
}

/// Bits Alice spends announcing her auxiliary outcomes: N log2 q.
inline double classical_cost(const ChannelSpec &spec) {
    return double(spec.pairs()) * std::log2(double(spec.receiver_dim()));
}

/// N log2(p q), reached when every pair is maximally entangled.
inline double maximal_information(const ChannelSpec &spec) {
    return double(spec.pairs()) *
           std::log2(double(spec.sender_dim() * spec.receiver_dim()));
}

/// Grid coordinate i of an axis with `steps` points spanning [0.5/steps, 0.5].
inline double surface_axis_value(std::size_t i, std::size_t steps) {
    return 0.5 * double(i + 1) / double(steps);
}

/**
 * I_ave for p = 3, q = 2, N = 2 over alpha_{0,1}^2 x alpha_{0,2}^2, both in
 * [0.5/steps, 0.5]. Row-major with alpha_{0,1}^2 as the outer axis.
 */
inline std::vector<SurfacePoint> capacity_surface(std::size_t steps) {
    if (steps < 2) {
        throw std::invalid_argument("capacity_surface: steps must be >= 2");
    }
    std::vector<SurfacePoint> out;
    out.reserve(steps * steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double a1 = surface_axis_value(i, steps);
        for (std::size_t j = 0; j < steps; ++j) {
            const double a2 = surface_axis_value(j, steps);
            const auto spec = ChannelSpec::qubit_receiver(3, {a1, a2});
            out.push_back({a1, a2, average_information(spec)});
        }
    }
    return out;
}

inline CapacityReport report(const ChannelSpec &spec) {
    CapacityReport rep{spec, {}, 0.0, classical_cost(spec), maximal_information(spec)};
    for (const auto &b : branch_probabilities(spec)) {
        const auto count = branch_message_count(spec.sender_dim(), spec.receiver_dim(), b.digits);
        const double bits = std::log2(double(count));
        rep.branch_rows.push_back({b.digits, b.probability, count, bits});
        rep.average_information += b.probability * bits;
    }
    return rep;
}

} // namespace qdense
