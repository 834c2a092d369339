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

// Two 3x2 pairs with alpha_0^2 = 0.2 and 0.4: capacity report plus a few
// round trips with explicit messages.

#include <cstdio>

#include "qdense/analysis.hpp"
#include "qdense/protocol.hpp"

int main() {
    using namespace qdense;
    const auto spec = ChannelSpec::qubit_receiver(3, {0.2, 0.4});

    const auto rep = report(spec);
    for (const auto &row : rep.branch_rows) {
        std::printf("branch (%zu,%zu)  P=%.4f  states=%llu\n", row.digits[0], row.digits[1],
                    row.probability, static_cast<unsigned long long>(row.message_count));
    }
    std::printf("average information %.6f bits, classical cost %.1f bits\n",
                rep.average_information, rep.classical_cost);

    Rng rng(1);
    for (std::uint64_t m : {0, 5, 17}) {
        const auto t = run_protocol(spec, Message{m}, rng);
        std::printf("sent %llu in branch (%zu,%zu) -> decoded %llu\n",
                    static_cast<unsigned long long>(t.message.value), t.branch.digits[0],
                    t.branch.digits[1], static_cast<unsigned long long>(t.decoded.value));
    }
}
