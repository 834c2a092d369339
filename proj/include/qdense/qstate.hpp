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
 * Mixed-radix state-vector algebra for registers of qudits with
 * heterogeneous dimensions.
 *
 * Basis index convention: the first listed subsystem is the most
 * significant digit, so for dims {3, 2} the basis order is
 * |00>, |01>, |10>, |11>, |20>, |21>.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdense {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;
// Squared norms below this are treated as exactly zero probability.
inline constexpr double kZeroProbability = 1e-20;

class MixedRadixSpace {
  public:
    MixedRadixSpace() = default;

    explicit MixedRadixSpace(std::vector<std::size_t> dims)
        : dims_(std::move(dims)) {
        if (dims_.empty()) {
            throw std::invalid_argument("MixedRadixSpace: no subsystems");
        }
        total_ = 1;
        for (auto d : dims_) {
            if (d < 2) {
                throw std::invalid_argument(
                    "MixedRadixSpace: subsystem dimension must be >= 2");
            }
            total_ *= d;
        }
        strides_.assign(dims_.size(), 1);
        for (std::size_t i = dims_.size() - 1; i > 0; --i) {
            strides_[i - 1] = strides_[i] * dims_[i];
        }
    }

    [[nodiscard]] const std::vector<std::size_t> &dims() const { return dims_; }
    [[nodiscard]] std::size_t size() const { return dims_.size(); }
    [[nodiscard]] std::size_t dim(std::size_t subsystem) const {
        return dims_.at(subsystem);
    }
    [[nodiscard]] std::size_t total_dim() const { return total_; }
    [[nodiscard]] std::size_t stride(std::size_t subsystem) const {
        return strides_.at(subsystem);
    }

    [[nodiscard]] std::size_t digit(std::size_t index,
                                    std::size_t subsystem) const {
        return (index / strides_[subsystem]) % dims_[subsystem];
    }

    [[nodiscard]] std::vector<std::size_t> digits(std::size_t index) const {
        std::vector<std::size_t> out(dims_.size());
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            out[i] = digit(index, i);
        }
        return out;
    }

    [[nodiscard]] std::size_t index(std::span<const std::size_t> digits) const {
        if (digits.size() != dims_.size()) {
            throw std::invalid_argument("MixedRadixSpace: digit count mismatch");
        }
        std::size_t idx = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (digits[i] >= dims_[i]) {
                throw std::out_of_range("MixedRadixSpace: digit out of range");
            }
            idx += digits[i] * strides_[i];
        }
        return idx;
    }

    /// Sub-space spanned by the listed subsystems, in the listed order.
    [[nodiscard]] MixedRadixSpace
    subspace(std::span<const std::size_t> subsystems) const {
        std::vector<std::size_t> d;
        d.reserve(subsystems.size());
        for (auto s : subsystems) {
            d.push_back(dims_.at(s));
        }
        return MixedRadixSpace(std::move(d));
    }

    friend bool operator==(const MixedRadixSpace &a, const MixedRadixSpace &b) {
        return a.dims_ == b.dims_;
    }

  private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

/**
 * Normalized pure state over a MixedRadixSpace. Construction enforces
 * unit norm within kNormTolerance; use normalized() to rescale raw
 * amplitudes first.
 */
class StateVector {
  public:
    StateVector(MixedRadixSpace space, std::vector<Complex> amplitudes)
        : space_(std::move(space)), amps_(std::move(amplitudes)) {
        if (amps_.size() != space_.total_dim()) {
            throw std::invalid_argument(
                "StateVector: amplitude count does not match space");
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw std::invalid_argument("StateVector: state is not normalized");
        }
    }

    static StateVector normalized(MixedRadixSpace space,
                                  std::vector<Complex> amplitudes) {
        double n2 = 0.0;
        for (const auto &a : amplitudes) {
            n2 += std::norm(a);
        }
        if (!(n2 > kZeroProbability)) {
            throw std::domain_error("StateVector: cannot normalize zero vector");
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto &a : amplitudes) {
            a *= inv;
        }
        return {std::move(space), std::move(amplitudes)};
    }

    static StateVector basis(MixedRadixSpace space,
                             std::span<const std::size_t> digits) {
        std::vector<Complex> amps(space.total_dim());
        amps[space.index(digits)] = 1.0;
        return {std::move(space), std::move(amps)};
    }

    static StateVector basis(std::size_t dim, std::size_t level) {
        const std::size_t d[] = {level};
        return basis(MixedRadixSpace({dim}), d);
    }

    [[nodiscard]] const MixedRadixSpace &space() const { return space_; }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const { return amps_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double n2 = 0.0;
        for (const auto &a : amps_) {
            n2 += std::norm(a);
        }
        return n2;
    }

  private:
    MixedRadixSpace space_;
    std::vector<Complex> amps_;
};

/// Dense square matrix, row-major.
class Operator {
  public:
    explicit Operator(std::size_t dim)
        : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {
        if (dim == 0) {
            throw std::invalid_argument("Operator: dimension must be positive");
        }
    }

    Operator(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim == 0 || entries_.size() != dim * dim) {
            throw std::invalid_argument("Operator: entry count must be dim*dim");
        }
    }

    static Operator identity(std::size_t dim) {
        Operator op(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            op(i, i) = 1.0;
        }
        return op;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const std::vector<Complex> &entries() const { return entries_; }

    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] const Complex &operator()(std::size_t row,
                                            std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    [[nodiscard]] std::vector<Complex> column(std::size_t col) const {
        std::vector<Complex> c(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            c[r] = (*this)(r, col);
        }
        return c;
    }

    [[nodiscard]] Operator adjoint() const {
        Operator out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend Operator operator*(const Operator &a, const Operator &b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("Operator: dimension mismatch in product");
        }
        Operator out(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < a.dim_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    /// max |(U^dagger U - I)_{ij}|
    [[nodiscard]] double unitarity_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                Complex s{};
                for (std::size_t k = 0; k < dim_; ++k) {
                    s += std::conj((*this)(k, i)) * (*this)(k, j);
                }
                if (i == j) {
                    s -= 1.0;
                }
                worst = std::max(worst, std::abs(s));
            }
        }
        return worst;
    }

    [[nodiscard]] bool is_unitary(double tol = kUnitaryTolerance) const {
        return unitarity_defect() < tol;
    }

  private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

namespace detail {

inline void check_targets(const MixedRadixSpace &space,
                          std::span<const std::size_t> targets) {
    if (targets.empty()) {
        throw std::invalid_argument("no target subsystems given");
    }
    std::vector<bool> seen(space.size(), false);
    for (auto t : targets) {
        if (t >= space.size()) {
            throw std::out_of_range("target subsystem out of range");
        }
        if (seen[t]) {
            throw std::invalid_argument("duplicate target subsystem");
        }
        seen[t] = true;
    }
}

// Global offset of every target sub-index (mixed radix over the targets,
// first target most significant).
inline std::vector<std::size_t>
target_offsets(const MixedRadixSpace &space,
               std::span<const std::size_t> targets) {
    std::vector<std::size_t> offsets{0};
    for (auto t : targets) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * space.dim(t));
        for (auto o : offsets) {
            for (std::size_t d = 0; d < space.dim(t); ++d) {
                next.push_back(o + d * space.stride(t));
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

// Global indices whose target digits are all zero, in increasing order.
inline std::vector<std::size_t>
complement_bases(const MixedRadixSpace &space,
                 std::span<const std::size_t> targets) {
    std::vector<std::size_t> bases;
    std::size_t target_dim = 1;
    for (auto t : targets) {
        target_dim *= space.dim(t);
    }
    bases.reserve(space.total_dim() / target_dim);
    for (std::size_t i = 0; i < space.total_dim(); ++i) {
        bool zero = true;
        for (auto t : targets) {
            if (space.digit(i, t) != 0) {
                zero = false;
                break;
            }
        }
        if (zero) {
            bases.push_back(i);
        }
    }
    return bases;
}

inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline void check_orthonormal(std::span<const std::vector<Complex>> vectors,
                              double tol, const char *what) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const Complex g = dot(vectors[i], vectors[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > tol) {
                throw std::invalid_argument(std::string(what) +
                                            ": vectors are not orthonormal");
            }
        }
    }
}

} // namespace detail

/// Kronecker product in list order.
inline StateVector tensor(std::span<const StateVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("tensor: empty state list");
    }
    std::vector<std::size_t> dims;
    std::vector<Complex> amps{Complex{1.0, 0.0}};
    for (const auto &s : states) {
        dims.insert(dims.end(), s.space().dims().begin(), s.space().dims().end());
        std::vector<Complex> next;
        next.reserve(amps.size() * s.size());
        for (const auto &a : amps) {
            for (const auto &b : s.amplitudes()) {
                next.push_back(a * b);
            }
        }
        amps = std::move(next);
    }
    return {MixedRadixSpace(std::move(dims)), std::move(amps)};
}

inline StateVector tensor(std::initializer_list<StateVector> states) {
    return tensor(std::span<const StateVector>(states.begin(), states.size()));
}

/// Applies `op` to the listed subsystems (first target most significant in
/// the operator's index), identity elsewhere.
inline StateVector apply(const Operator &op, const StateVector &state,
                         std::span<const std::size_t> targets) {
    const auto &space = state.space();
    detail::check_targets(space, targets);
    const auto offsets = detail::target_offsets(space, targets);
    if (offsets.size() != op.dim()) {
        throw std::invalid_argument(
            "apply: operator dimension does not match target subsystems");
    }
    const auto bases = detail::complement_bases(space, targets);
    std::vector<Complex> out(state.size());
    std::vector<Complex> local(op.dim());
    for (auto base : bases) {
        for (std::size_t t = 0; t < offsets.size(); ++t) {
            local[t] = state[base + offsets[t]];
        }
        for (std::size_t r = 0; r < op.dim(); ++r) {
            Complex s{};
            for (std::size_t c = 0; c < op.dim(); ++c) {
                s += op(r, c) * local[c];
            }
            out[base + offsets[r]] = s;
        }
    }
    // Non-unitary operators may denormalize; callers opt into that via
    // StateVector::normalized.
    double n2 = 0.0;
    for (const auto &a : out) {
        n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        return StateVector::normalized(space, std::move(out));
    }
    return {space, std::move(out)};
}

inline StateVector apply(const Operator &op, const StateVector &state,
                         std::initializer_list<std::size_t> targets) {
    return apply(op, state,
                 std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// <a|b>, conjugate-linear in a.
inline Complex inner_product(const StateVector &a, const StateVector &b) {
    if (!(a.space() == b.space())) {
        throw std::invalid_argument("inner_product: space mismatch");
    }
    return detail::dot(a.amplitudes(), b.amplitudes());
}

/**
 * Marginal distribution of the computational-basis digits of `targets`,
 * indexed mixed-radix over the targets in the given order.
 */
inline std::vector<double>
outcome_probabilities(const StateVector &state,
                      std::span<const std::size_t> targets) {
    const auto &space = state.space();
    detail::check_targets(space, targets);
    const auto offsets = detail::target_offsets(space, targets);
    const auto bases = detail::complement_bases(space, targets);
    std::vector<double> probs(offsets.size(), 0.0);
    for (auto base : bases) {
        for (std::size_t t = 0; t < offsets.size(); ++t) {
            probs[t] += std::norm(state[base + offsets[t]]);
        }
    }
    return probs;
}

/// Draws an index with the given weights; zero-weight entries are never drawn.
inline std::size_t sample_index(std::span<const double> weights, Rng &rng) {
    double total = 0.0;
    for (auto w : weights) {
        total += w;
    }
    if (!(total > kZeroProbability)) {
        throw std::logic_error("sample_index: all outcomes have zero weight");
    }
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    std::size_t last_nonzero = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= kZeroProbability) {
            continue;
        }
        last_nonzero = i;
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

struct Measurement {
    std::vector<std::size_t> outcome;
    double probability = 0.0;
    StateVector collapsed;
};

/// Born-rule measurement of `targets` in the computational basis.
inline Measurement measure_computational(const StateVector &state,
                                         std::span<const std::size_t> targets,
                                         Rng &rng) {
    const auto probs = outcome_probabilities(state, targets);
    const std::size_t pick = sample_index(probs, rng);
    const double p = probs[pick];
    if (!(p > kZeroProbability)) {
        throw std::logic_error("measure_computational: zero-norm branch");
    }

    const auto &space = state.space();
    const auto sub = space.subspace(targets);
    std::vector<std::size_t> outcome = sub.digits(pick);
    std::vector<Complex> amps(state.size());
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < state.size(); ++i) {
        bool match = true;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (space.digit(i, targets[t]) != outcome[t]) {
                match = false;
                break;
            }
        }
        if (match) {
            amps[i] = state[i] * scale;
        }
    }
    return {std::move(outcome), p,
            StateVector::normalized(space, std::move(amps))};
}

inline Measurement measure_computational(const StateVector &state,
                                         std::initializer_list<std::size_t> targets,
                                         Rng &rng) {
    return measure_computational(
        state, std::span<const std::size_t>(targets.begin(), targets.size()), rng);
}

struct Projection {
    double probability = 0.0;
    std::optional<StateVector> collapsed; // empty when probability is zero
};

/**
 * Projects `targets` onto each member of an orthonormal basis of the target
 * subspace. Result i holds ||(<b_i| x I)|psi>||^2 and the renormalized
 * post-measurement state.
 */
inline std::vector<Projection> project(const StateVector &state,
                                       std::span<const std::size_t> targets,
                                       std::span<const StateVector> basis) {
    const auto &space = state.space();
    detail::check_targets(space, targets);
    const auto sub = space.subspace(targets);
    std::vector<std::vector<Complex>> vectors;
    vectors.reserve(basis.size());
    for (const auto &b : basis) {
        if (!(b.space() == sub)) {
            throw std::invalid_argument(
                "project: basis state does not live on the target subspace");
        }
        vectors.push_back(b.amplitudes());
    }
    detail::check_orthonormal(vectors, kNormTolerance, "project");

    const auto offsets = detail::target_offsets(space, targets);
    const auto bases = detail::complement_bases(space, targets);

    std::vector<Projection> out;
    out.reserve(basis.size());
    std::vector<Complex> rest(bases.size());
    for (const auto &b : vectors) {
        double p = 0.0;
        for (std::size_t k = 0; k < bases.size(); ++k) {
            Complex s{};
            for (std::size_t t = 0; t < offsets.size(); ++t) {
                s += std::conj(b[t]) * state[bases[k] + offsets[t]];
            }
            rest[k] = s;
            p += std::norm(s);
        }
        if (p < kZeroProbability) {
            out.push_back({0.0, std::nullopt});
            continue;
        }
        std::vector<Complex> amps(state.size());
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t k = 0; k < bases.size(); ++k) {
            for (std::size_t t = 0; t < offsets.size(); ++t) {
                amps[bases[k] + offsets[t]] = b[t] * rest[k] * scale;
            }
        }
        out.push_back({p, StateVector::normalized(space, std::move(amps))});
    }
    return out;
}

inline std::vector<Projection> project(const StateVector &state,
                                       std::initializer_list<std::size_t> targets,
                                       std::span<const StateVector> basis) {
    return project(state,
                   std::span<const std::size_t>(targets.begin(), targets.size()),
                   basis);
}

/**
 * Extends orthonormal columns to a d x d unitary. The missing columns come
 * from Gram-Schmidt over the standard basis |0>, |1>, ... in index order,
 * so the result is deterministic.
 */
inline Operator complete_to_unitary(std::span<const std::vector<Complex>> columns,
                                    std::size_t d) {
    if (d == 0) {
        throw std::invalid_argument("complete_to_unitary: dimension must be positive");
    }
    if (columns.size() > d) {
        throw std::invalid_argument("complete_to_unitary: more columns than dimension");
    }
    for (const auto &c : columns) {
        if (c.size() != d) {
            throw std::invalid_argument("complete_to_unitary: column length mismatch");
        }
    }
    detail::check_orthonormal(columns, kNormTolerance, "complete_to_unitary");

    std::vector<std::vector<Complex>> basis(columns.begin(), columns.end());
    for (std::size_t e = 0; e < d && basis.size() < d; ++e) {
        std::vector<Complex> v(d);
        v[e] = 1.0;
        // Two passes of modified Gram-Schmidt keep the result unitary to
        // machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &u : basis) {
                const Complex proj = detail::dot(u, v);
                for (std::size_t i = 0; i < d; ++i) {
                    v[i] -= proj * u[i];
                }
            }
        }
        double n2 = 0.0;
        for (const auto &x : v) {
            n2 += std::norm(x);
        }
        if (n2 < 1e-12) {
            continue;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto &x : v) {
            x *= inv;
        }
        basis.push_back(std::move(v));
    }
    if (basis.size() != d) {
        throw std::logic_error("complete_to_unitary: failed to span the space");
    }
    Operator op(d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r) {
            op(r, c) = basis[c][r];
        }
    }
    return op;
}

inline Operator complete_to_unitary(std::initializer_list<std::vector<Complex>> columns,
                                    std::size_t d) {
    return complete_to_unitary(
        std::span<const std::vector<Complex>>(columns.begin(), columns.size()), d);
}

} // namespace qdense
