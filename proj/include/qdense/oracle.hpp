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
 * Brute-force reference computations. Everything here is derived from raw
 * amplitudes through qstate; nothing includes protocol.hpp or
 * analysis.hpp, so agreement with those modules is a real cross-check.
 *
 * Differences from the protocol route:
 *  - purification blocks are Householder reflections, not Gram-Schmidt
 *    completions;
 *  - branch weights are summed directly over the amplitude array;
 *  - message counts are the dimension of the span of every Alice-local
 *    Weyl operator applied to the branch state, not p (q - r).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qdense/channel.hpp"
#include "qdense/qstate.hpp"

namespace qdense::oracle {

inline constexpr double kMaxAmplitudes = 1e6;

enum class PhaseDivisor {
    kQMinusR, // corrected
    kQ,       // q for every branch
};

class SizeLimitExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

struct BranchWeight {
    std::vector<std::size_t> digits;
    double probability = 0.0;
};

namespace detail {

inline void check_size(const ChannelSpec &spec) {
    const double per_pair =
        double(spec.sender_dim()) * double(spec.receiver_dim()) * double(spec.receiver_dim());
    if (std::pow(per_pair, double(spec.pairs())) > kMaxAmplitudes) {
        throw SizeLimitExceeded("oracle: (p q^2)^N exceeds 1e6 amplitudes");
    }
}

inline Complex phase(double numerator, double denominator) {
    return std::polar(1.0, 2.0 * std::numbers::pi * numerator / denominator);
}

// Householder reflection H = I - 2 w w^T / (w^T w), w = e_0 - target, so
// that H e_0 = target for a real unit vector `target`.
inline std::vector<double> householder_from_e0(const std::vector<double> &target) {
    const std::size_t d = target.size();
    std::vector<double> h(d * d, 0.0);
    std::vector<double> w(target);
    for (auto &x : w) {
        x = -x;
    }
    w[0] += 1.0;
    double ww = 0.0;
    for (double x : w) {
        ww += x * x;
    }
    for (std::size_t i = 0; i < d; ++i) {
        h[i * d + i] = 1.0;
    }
    if (ww < 1e-30) {
        return h;
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            h[i * d + j] -= 2.0 * w[i] * w[j] / ww;
        }
    }
    return h;
}

// Rank of a vector family by Gram-Schmidt with re-orthogonalization.
inline std::size_t rank(const std::vector<std::vector<Complex>> &vectors, double tol = 1e-8) {
    std::vector<std::vector<Complex>> basis;
    for (auto v : vectors) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &u : basis) {
                Complex proj{};
                for (std::size_t i = 0; i < v.size(); ++i) {
                    proj += std::conj(u[i]) * v[i];
                }
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= proj * u[i];
                }
            }
        }
        double n2 = 0.0;
        for (const auto &x : v) {
            n2 += std::norm(x);
        }
        if (n2 > tol * tol) {
            const double inv = 1.0 / std::sqrt(n2);
            for (auto &x : v) {
                x *= inv;
            }
            basis.push_back(std::move(v));
        }
    }
    return basis.size();
}

} // namespace detail

/// Channel state with auxiliaries after a Householder-built purification.
inline StateVector brute_purified_state(const ChannelSpec &spec) {
    detail::check_size(spec);
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    const std::size_t n = spec.pairs();

    std::vector<StateVector> parts;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> amps(p * q);
        for (std::size_t r = 0; r < q; ++r) {
            amps[r * q + r] = spec.alphas()[k][r];
        }
        parts.push_back(StateVector::normalized(MixedRadixSpace({p, q}), std::move(amps)));
    }
    for (std::size_t k = 0; k < n; ++k) {
        parts.push_back(StateVector::basis(q, 0));
    }
    StateVector state = tensor(parts);

    for (std::size_t k = 0; k < n; ++k) {
        const auto &a = spec.alphas()[k];
        // Uniform weight wanted on every |jj>|r> with j >= r.
        std::vector<double> weight(q);
        for (std::size_t r = 0; r < q; ++r) {
            const double lower = r == 0 ? 0.0 : a[r - 1] * a[r - 1];
            weight[r] = std::sqrt(std::max(0.0, a[r] * a[r] - lower));
        }
        Operator block(p * q);
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> h;
            if (j < q) {
                std::vector<double> target(q, 0.0);
                for (std::size_t r = 0; r <= j; ++r) {
                    target[r] = weight[r] / a[j];
                }
                h = detail::householder_from_e0(target);
            } else {
                h = detail::householder_from_e0([&] {
                    std::vector<double> e0(q, 0.0);
                    e0[0] = 1.0;
                    return e0;
                }());
            }
            for (std::size_t x = 0; x < q; ++x) {
                for (std::size_t y = 0; y < q; ++y) {
                    block(j * q + x, j * q + y) = h[x * q + y];
                }
            }
        }
        const std::size_t targets[] = {2 * k, 2 * n + k};
        state = apply(block, state, targets);
    }
    return state;
}

/// Auxiliary-outcome weights summed straight from the amplitudes.
inline std::vector<BranchWeight> brute_branch_probabilities(const ChannelSpec &spec) {
    const StateVector state = brute_purified_state(spec);
    const std::size_t q = spec.receiver_dim();
    const std::size_t n = spec.pairs();
    std::size_t bins = 1;
    for (std::size_t k = 0; k < n; ++k) {
        bins *= q;
    }
    // Auxiliaries are the trailing subsystems, so the outcome index is the
    // global index modulo q^N.
    std::vector<double> weight(bins, 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        weight[i % bins] += std::norm(state[i]);
    }
    std::vector<BranchWeight> out;
    out.reserve(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        std::vector<std::size_t> digits(n);
        std::size_t rest = b;
        for (std::size_t k = n; k-- > 0;) {
            digits[k] = rest % q;
            rest /= q;
        }
        out.push_back({std::move(digits), weight[b]});
    }
    return out;
}

/// Branch-r encoded states built from the raw sum, ordered by (m, n).
inline std::vector<std::vector<Complex>> brute_encoded_states(std::size_t p, std::size_t q,
                                                              std::size_t r,
                                                              PhaseDivisor divisor) {
    if (q < 2 || p <= q || r >= q) {
        throw std::out_of_range("brute_encoded_states: parameters out of range");
    }
    const double d = divisor == PhaseDivisor::kQ ? double(q) : double(q - r);
    const double norm = 1.0 / std::sqrt(double(q - r));
    std::vector<std::vector<Complex>> states;
    for (std::size_t m = 0; m < p; ++m) {
        for (std::size_t n = 0; n + r < q; ++n) {
            std::vector<Complex> v(p * q);
            for (std::size_t j = r; j < q; ++j) {
                v[((j + m) % p) * q + j] += norm * detail::phase(double(j * n), d);
            }
            states.push_back(std::move(v));
        }
    }
    return states;
}

/// Largest |<a|b>| over distinct members of `states`.
inline double max_off_diagonal(const std::vector<std::vector<Complex>> &states) {
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            Complex g{};
            for (std::size_t i = 0; i < states[a].size(); ++i) {
                g += std::conj(states[a][i]) * states[b][i];
            }
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

/// max |G - I| over a state family's Gram matrix.
inline double gram_defect(const std::vector<std::vector<Complex>> &states) {
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a; b < states.size(); ++b) {
            Complex g{};
            for (std::size_t i = 0; i < states[a].size(); ++i) {
                g += std::conj(states[a][i]) * states[b][i];
            }
            if (a == b) {
                g -= 1.0;
            }
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

inline double brute_orthogonality(std::size_t p, std::size_t q, std::size_t r,
                                  PhaseDivisor divisor) {
    return max_off_diagonal(brute_encoded_states(p, q, r, divisor));
}

/**
 * Maximum number of perfectly distinguishable states Alice can produce from
 * branch state r by local operations: the dimension of
 * span{(X^m Z^n (x) I) |branch_r> : m, n < p}.
 */
inline std::size_t brute_distinguishable_count(std::size_t p, std::size_t q, std::size_t r) {
    if (q < 2 || p <= q || r >= q) {
        throw std::out_of_range("brute_distinguishable_count: parameters out of range");
    }
    const double norm = 1.0 / std::sqrt(double(q - r));
    std::vector<std::vector<Complex>> images;
    for (std::size_t m = 0; m < p; ++m) {
        for (std::size_t n = 0; n < p; ++n) {
            std::vector<Complex> v(p * q);
            for (std::size_t j = r; j < q; ++j) {
                v[((j + m) % p) * q + j] = norm * detail::phase(double(j * n), double(p));
            }
            images.push_back(std::move(v));
        }
    }
    return detail::rank(images);
}

/// sum over branches of (simulated weight) * log2(distinguishable count).
inline double brute_average_information(const ChannelSpec &spec) {
    const auto weights = brute_branch_probabilities(spec);
    const std::size_t p = spec.sender_dim();
    const std::size_t q = spec.receiver_dim();
    std::vector<std::size_t> per_digit(q);
    for (std::size_t r = 0; r < q; ++r) {
        per_digit[r] = brute_distinguishable_count(p, q, r);
    }
    double total = 0.0;
    for (const auto &w : weights) {
        double count = 1.0;
        for (auto r : w.digits) {
            count *= double(per_digit[r]);
        }
        total += w.probability * std::log2(count);
    }
    return total;
}

struct RandomSpecLimits {
    std::size_t max_pairs = 2;
    std::size_t max_sender_dim = 5;
    std::size_t max_receiver_dim = 4;
};

/// Random valid channel: sorted positive coefficients, normalized.
inline ChannelSpec random_spec(Rng &rng, RandomSpecLimits limits = {}) {
    std::uniform_int_distribution<std::size_t> pairs_dist(1, limits.max_pairs);
    const std::size_t n = pairs_dist(rng);
    const std::size_t q_max = std::min(limits.max_receiver_dim, limits.max_sender_dim - 1);
    const std::size_t q = std::uniform_int_distribution<std::size_t>(2, q_max)(rng);
    const std::size_t p =
        std::uniform_int_distribution<std::size_t>(q + 1, limits.max_sender_dim)(rng);
    std::uniform_real_distribution<double> coeff(0.05, 1.0);
    std::vector<std::vector<double>> squared;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> row(q);
        double sum = 0.0;
        for (auto &x : row) {
            x = coeff(rng);
            sum += x;
        }
        for (auto &x : row) {
            x /= sum;
        }
        std::sort(row.begin(), row.end());
        squared.push_back(std::move(row));
    }
    return ChannelSpec::from_squared(p, q, squared);
}

} // namespace qdense::oracle
