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

#include <cmath>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "qdense/qstate.hpp"

using namespace qdense;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const StateVector &s, const std::vector<Complex> &ref,
                       double tol = 1e-12) {
    ASSERT_EQ(s.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(s[i].real(), ref[i].real(), tol) << "i=" << i;
        EXPECT_NEAR(s[i].imag(), ref[i].imag(), tol) << "i=" << i;
    }
}

StateVector random_state(const std::vector<std::size_t> &dims, Rng &rng) {
    std::normal_distribution<double> g;
    MixedRadixSpace space(dims);
    std::vector<Complex> amps(space.total_dim());
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
    }
    return StateVector::normalized(space, std::move(amps));
}

Operator random_unitary(std::size_t d, Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<std::vector<Complex>> cols;
    // Gram-Schmidt on a Gaussian matrix; kept independent of complete_to_unitary.
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Complex> v(d);
        for (auto &x : v) {
            x = {g(rng), g(rng)};
        }
        for (const auto &u : cols) {
            Complex proj{};
            for (std::size_t i = 0; i < d; ++i) proj += std::conj(u[i]) * v[i];
            for (std::size_t i = 0; i < d; ++i) v[i] -= proj * u[i];
        }
        double n = 0.0;
        for (auto &x : v) n += std::norm(x);
        for (auto &x : v) x /= std::sqrt(n);
        cols.push_back(v);
    }
    Operator u(d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
    return u;
}

} // namespace

TEST(MixedRadixSpace, TotalDimIsProductAndFirstSubsystemMostSignificant) {
    MixedRadixSpace s({3, 2, 2});
    EXPECT_EQ(s.total_dim(), 12u);
    const std::size_t d[] = {2, 1, 0};
    EXPECT_EQ(s.index(d), 2u * 4 + 1 * 2 + 0);
    EXPECT_EQ(s.digits(11), (std::vector<std::size_t>{2, 1, 1}));
}

TEST(MixedRadixSpace, RejectsSmallDims) {
    EXPECT_THROW(MixedRadixSpace({3, 1}), std::invalid_argument);
    EXPECT_THROW(MixedRadixSpace(std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(StateVector, RejectsUnnormalizedAmplitudes) {
    EXPECT_THROW(StateVector(MixedRadixSpace({2}), {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized(MixedRadixSpace({2}), {0.0, 0.0}), std::domain_error);
}

TEST(Tensor, BasisStatesMultiply) {
    auto s = tensor({StateVector::basis(2, 0), StateVector::basis(2, 0)});
    expect_amplitudes(s, {1, 0, 0, 0});
    EXPECT_EQ(s.space().dims(), (std::vector<std::size_t>{2, 2}));
}

TEST(Tensor, Distributes) {
    StateVector plus(MixedRadixSpace({2}), {kInvSqrt2, kInvSqrt2});
    auto s = tensor({plus, StateVector::basis(2, 1)});
    expect_amplitudes(s, {0, kInvSqrt2, 0, kInvSqrt2});
}

TEST(Tensor, TwoQubitPairsGiveFourSubsystemProduct) {
    const double a0 = std::sqrt(0.2), a1 = std::sqrt(0.8);
    const double b0 = std::sqrt(0.4), b1 = std::sqrt(0.6);
    StateVector pair1(MixedRadixSpace({2, 2}), {a0, 0, 0, a1});
    StateVector pair2(MixedRadixSpace({2, 2}), {b0, 0, 0, b1});
    auto s = tensor({pair1, pair2});
    ASSERT_EQ(s.size(), 16u);
    // |0000>, |0011>, |1100>, |1111>
    std::vector<Complex> ref(16);
    ref[0] = a0 * b0;
    ref[3] = a0 * b1;
    ref[12] = a1 * b0;
    ref[15] = a1 * b1;
    expect_amplitudes(s, ref);
}

TEST(Tensor, EmptyListThrows) {
    std::vector<StateVector> none;
    EXPECT_THROW(tensor(none), std::invalid_argument);
}

TEST(Apply, IdentityLeavesStateUnchanged) {
    Rng rng(1);
    auto s = random_state({3, 2, 2}, rng);
    auto out = apply(Operator::identity(6), s, {0, 2});
    expect_amplitudes(out, s.amplitudes());
}

TEST(Apply, CyclicShiftOnQutrit) {
    Operator shift(3);
    shift(1, 0) = 1.0;
    shift(2, 1) = 1.0;
    shift(0, 2) = 1.0;
    const std::size_t d[] = {0, 0};
    auto s = StateVector::basis(MixedRadixSpace({3, 3}), d);
    auto out = apply(shift, s, {0});
    const std::size_t want[] = {1, 0};
    EXPECT_NEAR(std::abs(out[MixedRadixSpace({3, 3}).index(want)]), 1.0, 1e-15);
}

TEST(Apply, TargetOrderDefinesOperatorIndex) {
    // CNOT-like permutation with control on the second listed target.
    Operator op = Operator::identity(4);
    op(1, 1) = 0.0;
    op(3, 3) = 0.0;
    op(1, 3) = 1.0;
    op(3, 1) = 1.0;
    const std::size_t d[] = {0, 1};
    auto s = StateVector::basis(MixedRadixSpace({2, 2}), d); // |01>
    // targets {1, 0}: operator sees |b a> = |10>, which it leaves alone.
    auto out = apply(op, s, {1, 0});
    expect_amplitudes(out, {0, 1, 0, 0});
    // targets {0, 1}: operator sees |01> -> |11>.
    auto out2 = apply(op, s, {0, 1});
    expect_amplitudes(out2, {0, 0, 0, 1});
}

TEST(Apply, PurificationBlockOnMaximalPairKeepsAuxiliaryInZero) {
    // alpha0 = alpha1 = 1/sqrt2 gives A = 1, B = 0: the j=1 block is diag(1,-1).
    Operator u = Operator::identity(6);
    u(3, 3) = -1.0;
    StateVector pair(MixedRadixSpace({3, 2}), {kInvSqrt2, 0, 0, kInvSqrt2, 0, 0});
    auto s = tensor({pair, StateVector::basis(2, 0)});
    auto out = apply(u, s, {0, 2});
    const std::size_t aux[] = {2};
    const auto probs = outcome_probabilities(out, aux);
    EXPECT_NEAR(probs[0], 1.0, 1e-15);
    EXPECT_NEAR(probs[1], 0.0, 1e-15);
}

TEST(Apply, DimensionMismatchAndDuplicateTargetsThrow) {
    auto s = StateVector::basis(MixedRadixSpace({3, 2}), std::vector<std::size_t>{0, 0});
    EXPECT_THROW(apply(Operator::identity(4), s, {0, 1}), std::invalid_argument);
    EXPECT_THROW(apply(Operator::identity(9), s, {0, 0}), std::invalid_argument);
    EXPECT_THROW(apply(Operator::identity(2), s, {5}), std::out_of_range);
}

TEST(ApplyProperty, NormPreservedAndCompositionHolds) {
    Rng rng(42);
    std::uniform_int_distribution<std::size_t> dimd(2, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::size_t> dims(3);
        for (auto &d : dims) d = dimd(rng);
        auto s = random_state(dims, rng);
        std::vector<std::size_t> targets = {std::size_t(trial % 3), std::size_t((trial + 2) % 3)};
        const std::size_t d = dims[targets[0]] * dims[targets[1]];
        const Operator a = random_unitary(d, rng);
        const Operator b = random_unitary(d, rng);
        const auto once = apply(a * b, s, targets);
        const auto twice = apply(a, apply(b, s, targets), targets);
        EXPECT_NEAR(once.norm_squared(), 1.0, 1e-10);
        for (std::size_t i = 0; i < once.size(); ++i) {
            ASSERT_NEAR(std::abs(once[i] - twice[i]), 0.0, 1e-10);
        }
    }
}

TEST(InnerProduct, BasicValues) {
    Rng rng(3);
    auto x = random_state({3, 2}, rng);
    EXPECT_NEAR(std::abs(inner_product(x, x) - 1.0), 0.0, 1e-12);

    auto zero = StateVector::basis(MixedRadixSpace({2, 2}), std::vector<std::size_t>{0, 0});
    StateVector bell(MixedRadixSpace({2, 2}), {kInvSqrt2, 0, 0, kInvSqrt2});
    EXPECT_NEAR(inner_product(zero, bell).real(), kInvSqrt2, 1e-15);

    // Conjugate-linear in the first argument.
    StateVector iz(MixedRadixSpace({2, 2}), {Complex(0, 1), 0, 0, 0});
    EXPECT_NEAR(inner_product(iz, bell).imag(), -kInvSqrt2, 1e-15);
}

TEST(InnerProduct, SpaceMismatchThrows) {
    EXPECT_THROW(inner_product(StateVector::basis(2, 0), StateVector::basis(3, 0)),
                 std::invalid_argument);
}

TEST(MeasureComputational, BasisStateIsDeterministic) {
    Rng rng(0);
    auto s = StateVector::basis(MixedRadixSpace({2, 2}), std::vector<std::size_t>{0, 1});
    auto m = measure_computational(s, {0, 1}, rng);
    EXPECT_EQ(m.outcome, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(m.probability, 1.0);
}

TEST(MeasureComputational, AuxiliaryOfPurifiedPairHasBornProbabilities) {
    // alpha0^2 = 0.2, alpha1^2 = 0.8 after purification:
    // sqrt(0.2)(|00>+|11>)|0> + sqrt(0.6)|11>|1>  =>  P(0) = 0.4, P(1) = 0.6.
    MixedRadixSpace space({3, 2, 2});
    std::vector<Complex> amps(12);
    amps[space.index(std::vector<std::size_t>{0, 0, 0})] = std::sqrt(0.2);
    amps[space.index(std::vector<std::size_t>{1, 1, 0})] = std::sqrt(0.2);
    amps[space.index(std::vector<std::size_t>{1, 1, 1})] = std::sqrt(0.6);
    StateVector s(space, amps);
    const std::size_t aux[] = {2};
    const auto probs = outcome_probabilities(s, aux);
    EXPECT_NEAR(probs[0], 0.4, 1e-12);
    EXPECT_NEAR(probs[1], 0.6, 1e-12);

    Rng rng(5);
    std::map<std::size_t, int> seen;
    for (int i = 0; i < 200; ++i) {
        auto m = measure_computational(s, aux, rng);
        ++seen[m.outcome[0]];
        EXPECT_NEAR(m.probability, probs[m.outcome[0]], 1e-12);
        EXPECT_NEAR(m.collapsed.norm_squared(), 1.0, 1e-12);
    }
    EXPECT_GT(seen[0], 0);
    EXPECT_GT(seen[1], 0);
}

TEST(MeasureComputational, ZeroProbabilityOutcomesAreNeverSampled) {
    StateVector s(MixedRadixSpace({3}), {0.0, 1.0, 0.0});
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(measure_computational(s, {0}, rng).outcome[0], 1u);
    }
}

TEST(MeasureProperty, MarginalsMatchDirectSumAndAreComplete) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_state({2, 3, 2}, rng);
        const std::size_t targets[] = {2, 0};
        const auto probs = outcome_probabilities(s, targets);
        double total = 0.0;
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t c = 0; c < 2; ++c) {
                double direct = 0.0;
                for (std::size_t b = 0; b < 3; ++b) {
                    direct += std::norm(s[s.space().index(std::vector<std::size_t>{a, b, c})]);
                }
                EXPECT_NEAR(probs[c * 2 + a], direct, 1e-12);
                total += probs[c * 2 + a];
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Project, BasisMemberProjectsOntoItself) {
    std::vector<StateVector> basis = {
        StateVector(MixedRadixSpace({2, 2}), {kInvSqrt2, 0, 0, kInvSqrt2}),
        StateVector(MixedRadixSpace({2, 2}), {kInvSqrt2, 0, 0, -kInvSqrt2}),
        StateVector(MixedRadixSpace({2, 2}), {0, kInvSqrt2, kInvSqrt2, 0}),
        StateVector(MixedRadixSpace({2, 2}), {0, kInvSqrt2, -kInvSqrt2, 0}),
    };
    auto results = project(basis[2], {0, 1}, basis);
    ASSERT_EQ(results.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(results[i].probability, i == 2 ? 1.0 : 0.0, 1e-12);
    }
    EXPECT_FALSE(results[0].collapsed.has_value());
    ASSERT_TRUE(results[2].collapsed.has_value());
}

TEST(Project, OrthogonalIncompleteBasisGivesZeroAndNoState) {
    auto s = StateVector::basis(MixedRadixSpace({2, 2}), std::vector<std::size_t>{0, 0});
    std::vector<StateVector> basis = {StateVector(MixedRadixSpace({2, 2}), {0, 1, 0, 0})};
    auto results = project(s, {0, 1}, basis);
    ASSERT_EQ(results.size(), 1u);
    EXPECT_EQ(results[0].probability, 0.0);
    EXPECT_FALSE(results[0].collapsed.has_value());
}

TEST(Project, NonOrthonormalBasisThrows) {
    auto s = StateVector::basis(2, 0);
    std::vector<StateVector> basis = {StateVector::basis(2, 0),
                                      StateVector(MixedRadixSpace({2}), {kInvSqrt2, kInvSqrt2})};
    EXPECT_THROW(project(s, {0}, basis), std::invalid_argument);
}

TEST(ProjectProperty, CompleteBasisProbabilitiesSumToOne) {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_state({3, 2, 2}, rng);
        const Operator u = random_unitary(4, rng);
        std::vector<StateVector> basis;
        for (std::size_t c = 0; c < 4; ++c) {
            basis.emplace_back(MixedRadixSpace({2, 2}), u.column(c));
        }
        auto results = project(s, {2, 1}, basis);
        double total = 0.0;
        for (const auto &r : results) {
            total += r.probability;
            if (r.collapsed) {
                EXPECT_NEAR(r.collapsed->norm_squared(), 1.0, 1e-12);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(CompleteToUnitary, FullStandardBasisGivesIdentity) {
    std::vector<std::vector<Complex>> cols = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto u = complete_to_unitary(cols, 3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(u(r, c), Complex(r == c ? 1.0 : 0.0));
}

TEST(CompleteToUnitary, PlusStateCompletesToMinusState) {
    auto u = complete_to_unitary({{kInvSqrt2, kInvSqrt2}}, 2);
    EXPECT_NEAR(u(0, 1).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(u(1, 1).real(), -kInvSqrt2, 1e-15);
    EXPECT_LT(u.unitarity_defect(), kUnitaryTolerance);
}

TEST(CompleteToUnitary, RejectsNonOrthonormalInput) {
    EXPECT_THROW(complete_to_unitary({{1.0, 0.0}, {kInvSqrt2, kInvSqrt2}}, 2),
                 std::invalid_argument);
    EXPECT_THROW(complete_to_unitary({{2.0, 0.0}}, 2), std::invalid_argument);
}

TEST(CompleteToUnitaryProperty, RandomOrthonormalInputsGiveUnitaries) {
    Rng rng(2024);
    for (std::size_t d = 1; d <= 8; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            const Operator ref = random_unitary(d, rng);
            const std::size_t k = std::size_t(trial) % (d + 1);
            std::vector<std::vector<Complex>> cols;
            for (std::size_t c = 0; c < k; ++c) cols.push_back(ref.column(c));
            const Operator u = complete_to_unitary(cols, d);
            EXPECT_LT(u.unitarity_defect(), kUnitaryTolerance) << "d=" << d << " k=" << k;
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < d; ++r) EXPECT_EQ(u(r, c), cols[c][r]);
        }
    }
}
