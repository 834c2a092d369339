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
#include <fstream>
#include <regex>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "qdense/oracle.hpp"

using namespace qdense;
using namespace qdense::oracle;

TEST(BruteBranchProbabilities, RunningExample) {
    auto w = brute_branch_probabilities(ChannelSpec::qubit_receiver(3, {0.2, 0.4}));
    ASSERT_EQ(w.size(), 4u);
    const double want[] = {0.32, 0.08, 0.48, 0.12};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i].probability, want[i], 1e-10);
    EXPECT_EQ(w[2].digits, (std::vector<std::size_t>{1, 0}));
}

TEST(BruteBranchProbabilities, MaximalAllInZeroBranch) {
    auto w = brute_branch_probabilities(ChannelSpec::maximal(5, 3, 2));
    EXPECT_NEAR(w[0].probability, 1.0, 1e-12);
    double total = 0.0;
    for (const auto &x : w) total += x.probability;
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BruteBranchProbabilities, SizeGuard) {
    // (6 * 25)^3 = 3.4e6 > 1e6
    EXPECT_THROW(brute_branch_probabilities(ChannelSpec::maximal(6, 5, 3)), SizeLimitExceeded);
    EXPECT_THROW(brute_average_information(ChannelSpec::maximal(6, 5, 3)), SizeLimitExceeded);
}

TEST(BruteOrthogonality, QubitReceiverBothDivisors) {
    EXPECT_LT(brute_orthogonality(3, 2, 0, PhaseDivisor::kQ), 1e-12);
    EXPECT_LT(brute_orthogonality(3, 2, 0, PhaseDivisor::kQMinusR), 1e-12);
}

TEST(BruteOrthogonality, NaiveDivisorCounterexample) {
    EXPECT_NEAR(brute_orthogonality(5, 3, 1, PhaseDivisor::kQ), 0.5, 1e-12);
    EXPECT_LT(brute_orthogonality(5, 3, 1, PhaseDivisor::kQMinusR), 1e-12);
}

TEST(BruteOrthogonalityProperty, CorrectedDivisorAlwaysOrthogonal) {
    for (std::size_t p = 3; p <= 7; ++p)
        for (std::size_t q = 2; q < p; ++q)
            for (std::size_t r = 0; r < q; ++r) {
                auto states = brute_encoded_states(p, q, r, PhaseDivisor::kQMinusR);
                EXPECT_LT(gram_defect(states), 1e-10) << p << q << r;
            }
}

TEST(BruteDistinguishableCount, EqualsSenderTimesSchmidtRank) {
    EXPECT_EQ(brute_distinguishable_count(3, 2, 0), 6u);
    EXPECT_EQ(brute_distinguishable_count(3, 2, 1), 3u);
    EXPECT_EQ(brute_distinguishable_count(5, 3, 1), 10u);
    EXPECT_EQ(brute_distinguishable_count(7, 4, 0), 28u);
}

TEST(BruteAverageInformation, KnownValues) {
    EXPECT_NEAR(brute_average_information(ChannelSpec::qubit_receiver(3, {0.2, 0.4})),
                4.369925001442312, 1e-10);
    EXPECT_NEAR(brute_average_information(ChannelSpec::maximal(3, 2, 2)), std::log2(36.0), 1e-10);
}

TEST(BrutePurifiedState, IsNormalizedAndUniformWithinBranch) {
    auto spec = ChannelSpec::from_squared(4, 3, {{0.2, 0.3, 0.5}});
    auto s = brute_purified_state(spec);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    // Branch 1 holds sqrt(0.1) on |11>|1> and |22>|1>.
    const auto &sp = s.space();
    EXPECT_NEAR(std::abs(s[sp.index(std::vector<std::size_t>{1, 1, 1})]), std::sqrt(0.1), 1e-12);
    EXPECT_NEAR(std::abs(s[sp.index(std::vector<std::size_t>{2, 2, 1})]), std::sqrt(0.1), 1e-12);
    EXPECT_NEAR(std::abs(s[sp.index(std::vector<std::size_t>{0, 0, 1})]), 0.0, 1e-12);
}

TEST(RandomSpec, RespectsLimits) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        auto spec = random_spec(rng);
        EXPECT_LE(spec.pairs(), 2u);
        EXPECT_LE(spec.sender_dim(), 5u);
        EXPECT_LE(spec.receiver_dim(), 4u);
        EXPECT_GT(spec.sender_dim(), spec.receiver_dim());
    }
}

TEST(OracleIndependence, IncludesOnlyStateAlgebraAndChannelType) {
    std::ifstream in(std::string(QDENSE_INCLUDE_DIR) + "/qdense/oracle.hpp");
    ASSERT_TRUE(in);
    const std::regex include_re(R"(#include\s+"qdense/([a-z_]+)\.hpp")");
    std::set<std::string> deps;
    for (std::string line; std::getline(in, line);) {
        std::smatch m;
        if (std::regex_search(line, m, include_re)) deps.insert(m[1]);
    }
    EXPECT_EQ(deps, (std::set<std::string>{"channel", "qstate"}));
}
