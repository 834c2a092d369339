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
 * Probabilistic dense coding over N non-maximally entangled p x q pairs.
 *
 * Run order:
 *  1. share the channel and append one q-level auxiliary per pair in |0>;
 *  2. purify each pair with a local unitary on (particle k, a_k);
 *  3. measure the auxiliaries, which leaves pair k in the uniform
 *     superposition of |jj>, j >= r_k;
 *  4. encode a message with shift-and-phase unitaries on Alice's particles;
 *  5. Bob projects each pair onto the matching orthonormal basis.
 *
 * Global layout: [1, 1', 2, 2', ..., N, N', a_1, ..., a_N] with dims
 * [p, q, p, q, ..., q, ..., q].
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdense/channel.hpp"
#include "qdense/qstate.hpp"

namespace qdense {

/// Divisor used in the encoding phase exp(2 pi i j n / divisor).
enum class PhaseConvention {
    kCorrected, ///< divisor q - r; branch bases are orthonormal for every r
    kNaive,     ///< divisor q; non-orthogonal for q >= 3, r >= 1
};

/// How encoding operators map levels outside the active range [r, q-1].
enum class Completion {
    kOrderPreserving, ///< leftover sources onto leftover targets, ascending
    kCyclicShift,     ///< |j> -> |(j+m) mod p> for every j
};

struct BranchOutcome {
    std::vector<std::size_t> digits; // r_1 ... r_N
    double probability = 0.0;
};

struct PairLabel {
    std::size_t m = 0;
    std::size_t n = 0;
    friend bool operator==(const PairLabel &, const PairLabel &) = default;
};

struct EncodingLabel {
    std::vector<PairLabel> pairs;
    friend bool operator==(const EncodingLabel &, const EncodingLabel &) = default;
};

struct Message {
    std::uint64_t value = 0;
    friend auto operator<=>(const Message &, const Message &) = default;
};

struct ProtocolTrace {
    ChannelSpec spec;
    BranchOutcome branch;
    Message message;
    EncodingLabel label;
    Message decoded;
    double branch_probability = 0.0;
    /// Born probability of the decoded outcome (1 for orthogonal bases).
    double decode_probability = 0.0;
    bool success = false;
};

struct ProtocolOptions {
    /// Reject fixed messages outside the sampled branch's range instead of
    /// clamping them.
    bool strict = false;
};

namespace detail {

/// exp(2 pi i k / d) with exact values at multiples of a quarter turn.
inline Complex root_of_unity(std::size_t k, std::size_t d) {
    k %= d;
    if (k == 0) {
        return {1.0, 0.0};
    }
    if (2 * k == d) {
        return {-1.0, 0.0};
    }
    if (4 * k == d) {
        return {0.0, 1.0};
    }
    if (4 * k == 3 * d) {
        return {0.0, -1.0};
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(d));
}

inline std::size_t phase_divisor(std::size_t q, std::size_t r,
                                 PhaseConvention convention) {
    return convention == PhaseConvention::kCorrected ? q - r : q;
}

inline void check_pair_layout(const StateVector &state, const ChannelSpec &spec,
                              bool with_aux) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        dims.push_back(spec.sender_dim());
        dims.push_back(spec.receiver_dim());
    }
    if (with_aux) {
        dims.insert(dims.end(), spec.pairs(), spec.receiver_dim());
    }
    if (state.space().dims() != dims) {
        throw std::invalid_argument("state layout does not match the channel");
    }
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
        throw std::overflow_error("message space exceeds 64 bits");
    }
    return a * b;
}

} // namespace detail

/// Shared channel state, without auxiliaries.
inline StateVector initial_state(const ChannelSpec &spec) {
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    std::vector<StateVector> pairs;
    pairs.reserve(spec.pairs());
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        std::vector<Complex> amps(p * q);
        for (std::size_t r = 0; r < q; ++r) {
            amps[r * q + r] = spec.alpha(r, k);
        }
        pairs.push_back(StateVector::normalized(MixedRadixSpace({p, q}), std::move(amps)));
    }
    return tensor(pairs);
}

/// Appends a_1 ... a_N, each a q-level system in |0>.
inline StateVector attach_auxiliaries(const StateVector &pair_state,
                                      const ChannelSpec &spec) {
    detail::check_pair_layout(pair_state, spec, false);
    std::vector<StateVector> parts{pair_state};
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        parts.push_back(StateVector::basis(spec.receiver_dim(), 0));
    }
    return tensor(parts);
}

/**
 * Purification unitary on (particle k, a_k), basis |j>|a> at index j*q + a.
 * Block-diagonal in the particle level j: for j < q the auxiliary block
 * sends |0> to
 *
 *     (1/alpha_j) sum_{r<=j} sqrt(alpha_r^2 - alpha_{r-1}^2) |r>,
 *
 * completed to a unitary; levels j >= q are left alone. The auxiliary
 * outcome r then carries sqrt(alpha_r^2 - alpha_{r-1}^2) on every |jj>,
 * j >= r, independent of j.
 */
inline Operator purification_unitary(const ChannelSpec &spec, std::size_t pair) {
    if (pair >= spec.pairs()) {
        throw std::out_of_range("purification_unitary: pair index out of range");
    }
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    Operator u = Operator::identity(p * q);
    for (std::size_t j = 0; j < q; ++j) {
        const double aj = spec.alpha(j, pair);
        if (aj == 0.0) {
            throw InvalidSpec("purification_unitary: alpha_" + std::to_string(j) +
                              " is zero");
        }
        std::vector<Complex> column(q);
        double prev_sq = 0.0;
        for (std::size_t r = 0; r <= j; ++r) {
            const double sq = spec.alpha_squared(r, pair);
            column[r] = std::sqrt(std::max(0.0, sq - prev_sq)) / std::abs(aj);
            prev_sq = sq;
        }
        if (aj < 0.0) {
            for (auto &c : column) {
                c = -c;
            }
        }
        const Operator block = complete_to_unitary({column}, q);
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                u(j * q + a, j * q + b) = block(a, b);
            }
        }
    }
    return u;
}

/// Applies every pair's purification unitary to initial_state (x) |0...0>.
inline StateVector conversion_step(const StateVector &state, const ChannelSpec &spec) {
    detail::check_pair_layout(state, spec, true);
    StateVector out = state;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        const std::size_t targets[] = {spec.alice_subsystem(k), spec.aux_subsystem(k)};
        out = apply(purification_unitary(spec, k), out, targets);
    }
    return out;
}

/// initial_state -> auxiliaries -> conversion_step.
inline StateVector purified_state(const ChannelSpec &spec) {
    return conversion_step(attach_auxiliaries(initial_state(spec), spec), spec);
}

/// P(r) for one pair: (q - r)(alpha_r^2 - alpha_{r-1}^2), alpha_{-1} = 0.
inline double pair_branch_probability(const ChannelSpec &spec, std::size_t pair,
                                      std::size_t r) {
    const double here = spec.alpha_squared(r, pair);
    const double below = r == 0 ? 0.0 : spec.alpha_squared(r - 1, pair);
    return double(spec.receiver_dim() - r) * std::max(0.0, here - below);
}

/// All q^N auxiliary outcomes, lexicographic with pair 1 most significant.
inline std::vector<BranchOutcome> branch_probabilities(const ChannelSpec &spec) {
    const std::size_t n = spec.pairs();
    const std::size_t q = spec.receiver_dim();
    std::vector<BranchOutcome> out;
    std::vector<std::size_t> digits(n, 0);
    while (true) {
        double prob = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            prob *= pair_branch_probability(spec, k, digits[k]);
        }
        out.push_back({digits, prob});
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < q) {
                break;
            }
            digits[pos] = 0;
            if (pos == 0) {
                return out;
            }
        }
    }
}

struct BranchMeasurement {
    BranchOutcome branch;
    /// Full post-measurement state, auxiliaries included.
    StateVector collapsed;
};

inline BranchMeasurement measure_branches(const StateVector &state,
                                          const ChannelSpec &spec, Rng &rng) {
    detail::check_pair_layout(state, spec, true);
    std::vector<std::size_t> aux(spec.pairs());
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        aux[k] = spec.aux_subsystem(k);
    }
    auto m = measure_computational(state, aux, rng);
    return {{std::move(m.outcome), m.probability}, std::move(m.collapsed)};
}

/// Normalized sum_{j >= r} |jj> on dims [p, q].
inline StateVector branch_state(std::size_t p, std::size_t q, std::size_t r) {
    if (r >= q || q > p) {
        throw std::out_of_range("branch_state: branch digit out of range");
    }
    std::vector<Complex> amps(p * q);
    for (std::size_t j = r; j < q; ++j) {
        amps[j * q + j] = 1.0;
    }
    return StateVector::normalized(MixedRadixSpace({p, q}), std::move(amps));
}

/**
 * p x p encoding unitary for branch digit r and label (m, n):
 * |j> -> exp(2 pi i j n / (q - r)) |(j + m) mod p> for r <= j <= q-1.
 * Other levels never carry amplitude in branch r; they are routed per
 * `completion` with unit phase.
 */
inline Operator encoding_operator(std::size_t p, std::size_t q, std::size_t r,
                                  std::size_t m, std::size_t n,
                                  PhaseConvention convention = PhaseConvention::kCorrected,
                                  Completion completion = Completion::kOrderPreserving) {
    if (q < 2 || p <= q) {
        throw std::invalid_argument("encoding_operator: requires p > q >= 2");
    }
    if (r >= q || m >= p || n >= q - r) {
        throw std::out_of_range("encoding_operator: label out of range");
    }
    const std::size_t divisor = detail::phase_divisor(q, r, convention);
    Operator u(p);
    std::vector<bool> target_used(p, false);
    for (std::size_t j = r; j < q; ++j) {
        const std::size_t target = (j + m) % p;
        u(target, j) = detail::root_of_unity(j * n, divisor);
        target_used[target] = true;
    }
    if (completion == Completion::kCyclicShift) {
        for (std::size_t j = 0; j < p; ++j) {
            if (j < r || j >= q) {
                u((j + m) % p, j) = 1.0;
            }
        }
        return u;
    }
    std::size_t next_target = 0;
    for (std::size_t j = 0; j < p; ++j) {
        if (j >= r && j < q) {
            continue;
        }
        while (target_used[next_target]) {
            ++next_target;
        }
        u(next_target, j) = 1.0;
        target_used[next_target] = true;
    }
    return u;
}

/**
 * The p(q - r) states (1/sqrt(q-r)) sum_{j=r}^{q-1} w^{jn} |(j+m) mod p>|j>
 * on dims [p, q], ordered by (m, n).
 */
inline std::vector<StateVector>
encoded_basis(std::size_t p, std::size_t q, std::size_t r,
              PhaseConvention convention = PhaseConvention::kCorrected) {
    if (q < 2 || p <= q) {
        throw std::invalid_argument("encoded_basis: requires p > q >= 2");
    }
    if (r >= q) {
        throw std::out_of_range("encoded_basis: branch digit out of range");
    }
    const std::size_t width = q - r;
    const std::size_t divisor = detail::phase_divisor(q, r, convention);
    const double scale = 1.0 / std::sqrt(double(width));
    std::vector<StateVector> out;
    out.reserve(p * width);
    for (std::size_t m = 0; m < p; ++m) {
        for (std::size_t n = 0; n < width; ++n) {
            std::vector<Complex> amps(p * q);
            for (std::size_t j = r; j < q; ++j) {
                amps[((j + m) % p) * q + j] = scale * detail::root_of_unity(j * n, divisor);
            }
            out.emplace_back(MixedRadixSpace({p, q}), std::move(amps));
        }
    }
    return out;
}

/// Number of messages available in a branch: prod_k p (q - r_k).
inline std::uint64_t message_space_size(const ChannelSpec &spec,
                                        const std::vector<std::size_t> &branch) {
    if (branch.size() != spec.pairs()) {
        throw std::invalid_argument("branch length does not match pair count");
    }
    std::uint64_t total = 1;
    for (auto r : branch) {
        if (r >= spec.receiver_dim()) {
            throw std::out_of_range("branch digit out of range");
        }
        total = detail::checked_mul(total, spec.sender_dim() * (spec.receiver_dim() - r));
    }
    return total;
}

/// Mixed-radix codec, radix p(q - r_k) per pair, pair 1 most significant,
/// m more significant than n within a pair.
inline Message labels_to_message(const EncodingLabel &label,
                                 const BranchOutcome &branch,
                                 const ChannelSpec &spec) {
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    if (label.pairs.size() != spec.pairs() || branch.digits.size() != spec.pairs()) {
        throw std::invalid_argument("labels_to_message: pair count mismatch");
    }
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        const std::size_t r = branch.digits[k];
        if (r >= q) {
            throw std::out_of_range("labels_to_message: branch digit out of range");
        }
        const std::size_t width = q - r;
        const auto &[m, n] = label.pairs[k];
        if (m >= p || n >= width) {
            throw std::out_of_range("labels_to_message: label out of range for branch");
        }
        value = detail::checked_mul(value, p * width) + m * width + n;
    }
    return {value};
}

inline EncodingLabel message_to_labels(Message message, const BranchOutcome &branch,
                                       const ChannelSpec &spec) {
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    if (message.value >= message_space_size(spec, branch.digits)) {
        throw std::out_of_range("message_to_labels: message out of range for branch");
    }
    EncodingLabel label;
    label.pairs.resize(spec.pairs());
    std::uint64_t rest = message.value;
    for (std::size_t k = spec.pairs(); k-- > 0;) {
        const std::size_t width = q - branch.digits[k];
        const std::uint64_t radix = p * width;
        const std::uint64_t digit = rest % radix;
        rest /= radix;
        label.pairs[k] = {static_cast<std::size_t>(digit / width),
                          static_cast<std::size_t>(digit % width)};
    }
    return label;
}

/// Product basis over all pairs for one branch, indexed by message value.
inline std::vector<StateVector> product_encoded_basis(const ChannelSpec &spec,
                                                      const std::vector<std::size_t> &branch) {
    const std::uint64_t count = message_space_size(spec, branch);
    std::vector<std::vector<StateVector>> per_pair;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        per_pair.push_back(encoded_basis(spec.sender_dim(), spec.receiver_dim(), branch[k]));
    }
    const BranchOutcome outcome{branch, 0.0};
    std::vector<StateVector> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) {
        const auto label = message_to_labels({v}, outcome, spec);
        std::vector<StateVector> factors;
        for (std::size_t k = 0; k < spec.pairs(); ++k) {
            const std::size_t width = spec.receiver_dim() - branch[k];
            factors.push_back(per_pair[k][label.pairs[k].m * width + label.pairs[k].n]);
        }
        out.push_back(tensor(factors));
    }
    return out;
}

/**
 * One full round trip. With no message, one is drawn uniformly from the
 * sampled branch's range. Bob decodes pair by pair.
 */
inline ProtocolTrace run_protocol(const ChannelSpec &spec, std::optional<Message> message,
                                  Rng &rng, ProtocolOptions options = {}) {
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();

    auto [branch, state] = measure_branches(purified_state(spec), spec, rng);
    const std::uint64_t count = message_space_size(spec, branch.digits);

    Message sent;
    if (message) {
        if (message->value >= count) {
            if (options.strict) {
                throw std::out_of_range("run_protocol: message " +
                                        std::to_string(message->value) +
                                        " out of range for branch with " +
                                        std::to_string(count) + " messages");
            }
            sent = {count - 1};
        } else {
            sent = *message;
        }
    } else {
        sent = {std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng)};
    }

    const EncodingLabel label = message_to_labels(sent, branch, spec);
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        const std::size_t target[] = {spec.alice_subsystem(k)};
        state = apply(encoding_operator(p, q, branch.digits[k], label.pairs[k].m,
                                        label.pairs[k].n),
                      state, target);
    }

    EncodingLabel decoded_label;
    double decode_probability = 1.0;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        const std::size_t r = branch.digits[k];
        const std::size_t width = q - r;
        const auto basis = encoded_basis(p, q, r);
        const std::size_t targets[] = {spec.alice_subsystem(k), spec.bob_subsystem(k)};
        auto outcomes = project(state, targets, basis);
        std::vector<double> weights(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            weights[i] = outcomes[i].probability;
        }
        const std::size_t pick = sample_index(weights, rng);
        decode_probability *= weights[pick];
        decoded_label.pairs.push_back({pick / width, pick % width});
        state = std::move(*outcomes[pick].collapsed);
    }
    const Message decoded = labels_to_message(decoded_label, branch, spec);

    ProtocolTrace trace{spec, branch, sent, label, decoded, branch.probability,
                        decode_probability, decoded == sent};
    return trace;
}

} // namespace qdense
