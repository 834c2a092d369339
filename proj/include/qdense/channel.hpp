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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdense {

/// Raised when a channel description violates one of its invariants.
class InvalidSpec : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * N shared pairs, each sum_r alpha_{r,k} |r>_k |r>_k' with Alice's particle
 * in dimension p and Bob's in dimension q < p.
 *
 * Invariants checked on construction:
 *  - p > q >= 2, N >= 1
 *  - every pair has q real, finite coefficients with sum of squares 1
 *    (within 1e-12)
 *  - |alpha_0| <= |alpha_1| <= ... <= |alpha_{q-1}| per pair
 *  - alpha_0 != 0 (otherwise the purification column for level 0 is
 *    undefined)
 */
class ChannelSpec {
  public:
    static constexpr double kNormTolerance = 1e-12;
    static constexpr double kOrderSlack = 1e-12;

    ChannelSpec(std::size_t sender_dim, std::size_t receiver_dim,
                std::vector<std::vector<double>> alphas)
        : p_(sender_dim), q_(receiver_dim), alphas_(std::move(alphas)) {
        validate();
    }

    /// Builds a spec from squared coefficients alpha_{r,k}^2 (non-negative).
    static ChannelSpec from_squared(std::size_t sender_dim,
                                    std::size_t receiver_dim,
                                    const std::vector<std::vector<double>> &squared) {
        std::vector<std::vector<double>> alphas;
        alphas.reserve(squared.size());
        for (std::size_t k = 0; k < squared.size(); ++k) {
            std::vector<double> row;
            row.reserve(squared[k].size());
            for (double s : squared[k]) {
                if (!std::isfinite(s) || s < 0.0) {
                    throw InvalidSpec("pair " + std::to_string(k + 1) +
                                      ": squared coefficients must be finite "
                                      "and non-negative");
                }
                row.push_back(std::sqrt(s));
            }
            alphas.push_back(std::move(row));
        }
        return {sender_dim, receiver_dim, std::move(alphas)};
    }

    /// Every pair maximally entangled: alpha_r^2 = 1/q.
    static ChannelSpec maximal(std::size_t sender_dim, std::size_t receiver_dim,
                               std::size_t pairs) {
        if (receiver_dim == 0) {
            throw InvalidSpec("receiver dimension q must be >= 2");
        }
        return from_squared(
            sender_dim, receiver_dim,
            std::vector<std::vector<double>>(
                pairs, std::vector<double>(receiver_dim, 1.0 / double(receiver_dim))));
    }

    /// Two-level receiver convenience: alpha_{0,k}^2 given, alpha_{1,k}^2 = 1 - it.
    static ChannelSpec qubit_receiver(std::size_t sender_dim,
                                      const std::vector<double> &alpha0_squared) {
        std::vector<std::vector<double>> sq;
        for (double a : alpha0_squared) {
            sq.push_back({a, 1.0 - a});
        }
        return from_squared(sender_dim, 2, sq);
    }

    [[nodiscard]] std::size_t pairs() const { return alphas_.size(); }
    [[nodiscard]] std::size_t sender_dim() const { return p_; }
    [[nodiscard]] std::size_t receiver_dim() const { return q_; }

    /// alpha_{level, pair}, pair 0-based.
    [[nodiscard]] double alpha(std::size_t level, std::size_t pair) const {
        return alphas_.at(pair).at(level);
    }
    [[nodiscard]] double alpha_squared(std::size_t level, std::size_t pair) const {
        const double a = alpha(level, pair);
        return a * a;
    }
    [[nodiscard]] const std::vector<std::vector<double>> &alphas() const {
        return alphas_;
    }

    /// Number of subsystems in the pair layout [1, 1', ..., N, N'].
    [[nodiscard]] std::size_t pair_subsystems() const { return 2 * pairs(); }
    [[nodiscard]] std::size_t alice_subsystem(std::size_t pair) const { return 2 * pair; }
    [[nodiscard]] std::size_t bob_subsystem(std::size_t pair) const { return 2 * pair + 1; }
    /// Auxiliaries follow all pair subsystems: a_1 ... a_N.
    [[nodiscard]] std::size_t aux_subsystem(std::size_t pair) const {
        return 2 * pairs() + pair;
    }

    friend bool operator==(const ChannelSpec &, const ChannelSpec &) = default;

  private:
    void validate() const {
        if (q_ < 2) {
            throw InvalidSpec("receiver dimension q must be >= 2");
        }
        if (p_ <= q_) {
            throw InvalidSpec("channel requires p > q (got p=" + std::to_string(p_) +
                              ", q=" + std::to_string(q_) + ")");
        }
        if (alphas_.empty()) {
            throw InvalidSpec("channel needs at least one pair");
        }
        for (std::size_t k = 0; k < alphas_.size(); ++k) {
            const auto &row = alphas_[k];
            const std::string who = "pair " + std::to_string(k + 1) + ": ";
            if (row.size() != q_) {
                throw InvalidSpec(who + "expected " + std::to_string(q_) +
                                  " coefficients, got " + std::to_string(row.size()));
            }
            double sum = 0.0;
            for (double a : row) {
                if (!std::isfinite(a)) {
                    throw InvalidSpec(who + "coefficients must be finite reals");
                }
                sum += a * a;
            }
            if (std::abs(sum - 1.0) > kNormTolerance) {
                throw InvalidSpec(who + "squared coefficients must sum to 1");
            }
            for (std::size_t r = 0; r + 1 < q_; ++r) {
                if (std::abs(row[r]) > std::abs(row[r + 1]) + kOrderSlack) {
                    throw InvalidSpec(who + "coefficients must be ordered "
                                            "|alpha_0| <= |alpha_1| <= ...");
                }
            }
            if (row[0] == 0.0) {
                throw InvalidSpec(who + "alpha_0 must be nonzero");
            }
        }
    }

    std::size_t p_;
    std::size_t q_;
    std::vector<std::vector<double>> alphas_;
};

} // namespace qdense
