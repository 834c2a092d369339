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
 * Subcommand bodies for the `qdense` tool. Each command writes its
 * document to `out` (or to config.out when set) and diagnostics to `err`,
 * and returns the process exit code.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdense/analysis.hpp"
#include "qdense/channel.hpp"
#include "qdense/oracle.hpp"
#include "qdense/protocol.hpp"
#include "qdense/reference_operators.hpp"

namespace qdense::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

struct RunConfig {
    std::size_t p = 3;
    std::size_t q = 2;
    std::optional<std::size_t> pairs;
    /// One coefficient list per pair; empty means every pair maximal.
    std::vector<std::vector<double>> alphas;
    bool alphas_squared = true;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t steps = 50;
    std::string out;
    /// "json" or "text"; empty picks the command's default (text for
    /// verify, json otherwise).
    std::string format;
    std::string phase_divisor = "q-r";
    std::size_t verify_specs = 100;
};

/// "0.2,0.8" -> {0.2, 0.8}
inline std::vector<double> parse_coefficient_list(const std::string &text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw InvalidSpec("cannot parse coefficient '" + item + "'");
        }
        if (used != item.size()) {
            throw InvalidSpec("cannot parse coefficient '" + item + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InvalidSpec("empty coefficient list");
    }
    return values;
}

/**
 * Merges a JSON config document into `config`. Recognized keys mirror the
 * RunConfig fields: p, q, pairs, alphas_sq or alphas (array of arrays),
 * trials, seed, steps, out, format, phase_divisor, verify_specs.
 */
inline void apply_config_document(const nlohmann::json &doc, RunConfig &config) {
    if (!doc.is_object()) {
        throw InvalidSpec("config document must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key == "p") {
            config.p = value.get<std::size_t>();
        } else if (key == "q") {
            config.q = value.get<std::size_t>();
        } else if (key == "pairs") {
            config.pairs = value.get<std::size_t>();
        } else if (key == "alphas_sq") {
            config.alphas = value.get<std::vector<std::vector<double>>>();
            config.alphas_squared = true;
        } else if (key == "alphas") {
            config.alphas = value.get<std::vector<std::vector<double>>>();
            config.alphas_squared = false;
        } else if (key == "trials") {
            config.trials = value.get<std::size_t>();
        } else if (key == "seed") {
            config.seed = value.get<std::uint64_t>();
        } else if (key == "steps") {
            config.steps = value.get<std::size_t>();
        } else if (key == "out") {
            config.out = value.get<std::string>();
        } else if (key == "format") {
            config.format = value.get<std::string>();
        } else if (key == "phase_divisor") {
            config.phase_divisor = value.get<std::string>();
        } else if (key == "verify_specs") {
            config.verify_specs = value.get<std::size_t>();
        } else {
            throw InvalidSpec("unknown config key '" + key + "'");
        }
    }
}

inline void load_config_file(const std::string &path, RunConfig &config) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpec("cannot open config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidSpec("config file '" + path + "' is not valid JSON: " + e.what());
    }
    try {
        apply_config_document(doc, config);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidSpec("config file '" + path + "': " + e.what());
    }
}

inline ChannelSpec to_spec(const RunConfig &config) {
    if (config.alphas.empty()) {
        return ChannelSpec::maximal(config.p, config.q, config.pairs.value_or(2));
    }
    if (config.pairs && *config.pairs != config.alphas.size()) {
        throw InvalidSpec("--pairs is " + std::to_string(*config.pairs) + " but " +
                          std::to_string(config.alphas.size()) +
                          " coefficient lists were given");
    }
    if (config.alphas_squared) {
        return ChannelSpec::from_squared(config.p, config.q, config.alphas);
    }
    return ChannelSpec(config.p, config.q, config.alphas);
}

namespace detail {

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

inline std::string digits_string(const std::vector<std::size_t> &digits) {
    std::string s = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        s += (i ? "," : "") + std::to_string(digits[i]);
    }
    return s + ")";
}

inline nlohmann::json spec_json(const ChannelSpec &spec) {
    std::vector<std::vector<double>> sq;
    for (std::size_t k = 0; k < spec.pairs(); ++k) {
        std::vector<double> row;
        for (std::size_t r = 0; r < spec.receiver_dim(); ++r) {
            row.push_back(spec.alpha_squared(r, k));
        }
        sq.push_back(std::move(row));
    }
    return {{"p", spec.sender_dim()},
            {"q", spec.receiver_dim()},
            {"pairs", spec.pairs()},
            {"alphas_sq", sq}};
}

// Runs `body` with the configured sink (file or `out`).
template <class Body>
int with_sink(const RunConfig &config, std::ostream &out, std::ostream &err, Body body) {
    if (config.out.empty()) {
        body(out);
        return kExitOk;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        err << "error: cannot write to '" << config.out << "'\n";
        return kExitValidation;
    }
    body(file);
    file.flush();
    if (!file) {
        err << "error: failed writing '" << config.out << "'\n";
        return kExitValidation;
    }
    return kExitOk;
}

inline std::string output_format(const RunConfig &config, const char *fallback) {
    return config.format.empty() ? std::string(fallback) : config.format;
}

inline bool check_format(const RunConfig &config, std::ostream &err) {
    if (!config.format.empty() && config.format != "json" && config.format != "text") {
        err << "error: unknown format '" << config.format << "' (expected json or text)\n";
        return false;
    }
    return true;
}

} // namespace detail

inline int cmd_info(const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (!detail::check_format(config, err)) {
        return kExitValidation;
    }
    std::optional<ChannelSpec> spec;
    try {
        spec = to_spec(config);
    } catch (const InvalidSpec &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    const CapacityReport rep = report(*spec);
    const bool json = detail::output_format(config, "json") == "json";
    return detail::with_sink(config, out, err, [&](std::ostream &os) {
        if (json) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto &row : rep.branch_rows) {
                rows.push_back({{"r", row.digits},
                                {"probability", row.probability},
                                {"message_count", row.message_count},
                                {"log2_count", row.log2_count}});
            }
            nlohmann::json doc = {{"spec", detail::spec_json(rep.spec)},
                                  {"branches", rows},
                                  {"average_information", rep.average_information},
                                  {"classical_cost", rep.classical_cost},
                                  {"maximal_information", rep.maximal_information}};
            os << doc.dump(2) << '\n';
            return;
        }
        os << "branch      probability        count  log2(count)\n";
        for (const auto &row : rep.branch_rows) {
            os << std::left << std::setw(12) << detail::digits_string(row.digits)
               << std::setw(19) << detail::format_number(row.probability) << std::setw(7)
               << row.message_count << detail::format_number(row.log2_count) << '\n';
        }
        os << "average information: " << detail::format_number(rep.average_information)
           << " bits\n"
           << "classical cost:      " << detail::format_number(rep.classical_cost) << " bits\n"
           << "maximal information: " << detail::format_number(rep.maximal_information)
           << " bits\n";
    });
}

struct SimulationSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double mean_bits = 0.0;
    std::vector<BranchOutcome> closed_form;
    std::vector<std::size_t> counts; // aligned with closed_form
};

inline SimulationSummary simulate(const ChannelSpec &spec, std::size_t trials,
                                  std::uint64_t seed) {
    SimulationSummary s;
    s.trials = trials;
    s.closed_form = branch_probabilities(spec);
    s.counts.assign(s.closed_form.size(), 0);
    Rng rng(seed);
    double bits = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const ProtocolTrace trace = run_protocol(spec, std::nullopt, rng);
        std::size_t idx = 0;
        for (auto r : trace.branch.digits) {
            idx = idx * spec.receiver_dim() + r;
        }
        ++s.counts[idx];
        if (trace.success) {
            ++s.successes;
        }
        bits += std::log2(double(message_space_size(spec, trace.branch.digits)));
    }
    s.mean_bits = trials ? bits / double(trials) : 0.0;
    return s;
}

inline int cmd_simulate(const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (!detail::check_format(config, err)) {
        return kExitValidation;
    }
    if (config.trials < 1) {
        err << "error: --trials must be >= 1\n";
        return kExitValidation;
    }
    std::optional<ChannelSpec> spec;
    try {
        spec = to_spec(config);
    } catch (const InvalidSpec &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    const SimulationSummary s = simulate(*spec, config.trials, config.seed);
    const double n = double(s.trials);
    const double success_rate = double(s.successes) / n;
    const bool json = detail::output_format(config, "json") == "json";

    return detail::with_sink(config, out, err, [&](std::ostream &os) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < s.closed_form.size(); ++i) {
            const double p = s.closed_form[i].probability;
            const double sigma = std::sqrt(p * (1.0 - p) / n);
            const double freq = double(s.counts[i]) / n;
            rows.push_back({{"r", s.closed_form[i].digits},
                            {"closed_form", p},
                            {"count", s.counts[i]},
                            {"frequency", freq},
                            {"sigma", sigma},
                            {"within_3_sigma", std::abs(freq - p) <= 3.0 * sigma}});
        }
        if (json) {
            nlohmann::json doc = {{"spec", detail::spec_json(*spec)},
                                  {"trials", s.trials},
                                  {"seed", config.seed},
                                  {"branches", rows},
                                  {"success_rate", success_rate},
                                  {"decode_failures", s.trials - s.successes},
                                  {"mean_bits", s.mean_bits},
                                  {"average_information", average_information(*spec)}};
            os << doc.dump(2) << '\n';
            return;
        }
        os << "trials: " << s.trials << "  seed: " << config.seed << '\n';
        os << "branch      closed-form        frequency          count\n";
        for (const auto &row : rows) {
            os << std::left << std::setw(12)
               << detail::digits_string(row["r"].get<std::vector<std::size_t>>())
               << std::setw(19) << detail::format_number(row["closed_form"].get<double>())
               << std::setw(19) << detail::format_number(row["frequency"].get<double>())
               << row["count"].get<std::size_t>() << '\n';
        }
        os << "success rate: " << detail::format_number(success_rate) << '\n'
           << "mean bits:    " << detail::format_number(s.mean_bits) << '\n';
    });
}

inline void write_surface_csv(const std::vector<SurfacePoint> &points, std::ostream &os) {
    os << "alpha01_sq,alpha02_sq,i_ave\n";
    for (const auto &pt : points) {
        os << detail::format_number(pt.alpha01_sq) << ',' << detail::format_number(pt.alpha02_sq)
           << ',' << detail::format_number(pt.i_ave) << '\n';
    }
}

inline int cmd_surface(const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (config.steps < 2) {
        err << "error: --steps must be >= 2\n";
        return kExitValidation;
    }
    const auto points = capacity_surface(config.steps);
    return detail::with_sink(config, out, err,
                             [&](std::ostream &os) { write_surface_csv(points, os); });
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/**
 * Oracle suite: unitarity sweeps, basis orthogonality under the requested
 * phase divisor, the naive-divisor counterexample, the reference 3 x 2
 * matrices, and closed-form vs brute-force probabilities and information
 * on a seeded random corpus plus the configured channel.
 */
inline std::vector<CheckResult> run_verification(const RunConfig &config) {
    std::vector<CheckResult> checks;
    const bool naive = config.phase_divisor == "q";
    if (!naive && config.phase_divisor != "q-r") {
        throw InvalidSpec("--phase-divisor must be 'q' or 'q-r'");
    }
    if (config.q < 2 || config.p <= config.q) {
        throw InvalidSpec("channel requires p > q (got p=" + std::to_string(config.p) +
                          ", q=" + std::to_string(config.q) + ")");
    }

    {
        double worst = 0.0;
        for (std::size_t p = 3; p <= 7; ++p) {
            for (std::size_t q = 2; q < p; ++q) {
                for (std::size_t r = 0; r < q; ++r) {
                    for (std::size_t m = 0; m < p; ++m) {
                        for (std::size_t n = 0; n + r < q; ++n) {
                            worst = std::max(worst,
                                             encoding_operator(p, q, r, m, n).unitarity_defect());
                        }
                    }
                }
            }
        }
        checks.push_back({"encoding operators unitary (p<=7)", worst < kUnitaryTolerance,
                          "max defect " + detail::format_number(worst)});
    }

    {
        const auto divisor = naive ? oracle::PhaseDivisor::kQ : oracle::PhaseDivisor::kQMinusR;
        double worst = 0.0;
        std::string per_r;
        for (std::size_t r = 0; r < config.q; ++r) {
            const double off = oracle::brute_orthogonality(config.p, config.q, r, divisor);
            worst = std::max(worst, off);
            per_r += (r ? ", " : "") + std::string("r=") + std::to_string(r) + ": " +
                     detail::format_number(off);
        }
        const bool ok = worst < kNormTolerance;
        checks.push_back({"encoded bases orthogonal (p=" + std::to_string(config.p) +
                              ", q=" + std::to_string(config.q) + ", divisor " +
                              (naive ? "q" : "q-r") + ")",
                          ok,
                          "max off-diagonal Gram " + per_r +
                              (ok ? "" : "; convention is NON-ORTHOGONAL")});
    }

    {
        double worst = 0.0;
        for (std::size_t p = 3; p <= 7; ++p) {
            for (std::size_t q = 2; q < p; ++q) {
                for (std::size_t r = 0; r < q; ++r) {
                    std::vector<std::vector<Complex>> states;
                    for (const auto &s : encoded_basis(p, q, r)) {
                        states.push_back(s.amplitudes());
                    }
                    worst = std::max(worst, oracle::gram_defect(states));
                }
            }
        }
        checks.push_back({"encoded_basis Gram = I (p<=7, corrected)", worst < kNormTolerance,
                          "max |G-I| " + detail::format_number(worst)});
    }

    {
        const double naive_gram = oracle::brute_orthogonality(5, 3, 1, oracle::PhaseDivisor::kQ);
        const double corrected =
            oracle::brute_orthogonality(5, 3, 1, oracle::PhaseDivisor::kQMinusR);
        checks.push_back(
            {"naive divisor counterexample (p=5, q=3, r=1)",
             std::abs(naive_gram - 0.5) < kNormTolerance && corrected < kNormTolerance,
             "divisor q: " + detail::format_number(naive_gram) +
                 " (non-orthogonal), divisor q-r: " + detail::format_number(corrected)});
    }

    if (config.p == 3 && config.q == 2) {
        std::size_t matched = 0;
        std::string mismatched;
        for (const auto &ref : kReferenceOperators) {
            const Operator u = encoding_operator(3, 2, ref.r, ref.m, ref.n);
            bool equal = true;
            for (std::size_t i = 0; i < 9; ++i) {
                if (u.entries()[i] != Complex(double(ref.entries[i]), 0.0)) {
                    equal = false;
                }
            }
            if (equal) {
                ++matched;
            } else {
                mismatched += std::string(" ") + ref.name;
            }
        }
        checks.push_back({"reference 3x2 encoding matrices reproduced entrywise",
                          matched == kReferenceOperators.size(),
                          std::to_string(matched) + "/" +
                              std::to_string(kReferenceOperators.size()) + " exact" +
                              (mismatched.empty() ? "" : "; mismatched:" + mismatched)});
    }

    auto compare_spec = [](const ChannelSpec &spec, double &prob_err, double &info_err,
                           double &unitary_err) {
        const auto closed = branch_probabilities(spec);
        const auto brute = oracle::brute_branch_probabilities(spec);
        for (std::size_t i = 0; i < closed.size(); ++i) {
            prob_err = std::max(prob_err, std::abs(closed[i].probability - brute[i].probability));
        }
        info_err = std::max(info_err, std::abs(average_information(spec) -
                                               oracle::brute_average_information(spec)));
        for (std::size_t k = 0; k < spec.pairs(); ++k) {
            unitary_err = std::max(unitary_err, purification_unitary(spec, k).unitarity_defect());
        }
    };

    {
        Rng rng(config.seed);
        double prob_err = 0.0;
        double info_err = 0.0;
        double unitary_err = 0.0;
        for (std::size_t i = 0; i < config.verify_specs; ++i) {
            compare_spec(oracle::random_spec(rng), prob_err, info_err, unitary_err);
        }
        const std::string corpus = std::to_string(config.verify_specs) + " random specs";
        checks.push_back({"purification unitaries unitary (" + corpus + ")",
                          unitary_err < kUnitaryTolerance,
                          "max defect " + detail::format_number(unitary_err)});
        checks.push_back({"branch probabilities: closed form vs brute force (" + corpus + ")",
                          prob_err < kNormTolerance,
                          "max |diff| " + detail::format_number(prob_err)});
        checks.push_back({"average information: closed form vs brute force (" + corpus + ")",
                          info_err < kNormTolerance,
                          "max |diff| " + detail::format_number(info_err)});
    }

    {
        const ChannelSpec spec = to_spec(config);
        double prob_err = 0.0;
        double info_err = 0.0;
        double unitary_err = 0.0;
        compare_spec(spec, prob_err, info_err, unitary_err);
        checks.push_back({"configured channel: closed form vs brute force",
                          prob_err < kNormTolerance && info_err < kNormTolerance &&
                              unitary_err < kUnitaryTolerance,
                          "I_ave " + detail::format_number(average_information(spec)) +
                              ", prob diff " + detail::format_number(prob_err) +
                              ", info diff " + detail::format_number(info_err)});
    }
    return checks;
}

inline int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (!detail::check_format(config, err)) {
        return kExitValidation;
    }
    std::vector<CheckResult> checks;
    try {
        checks = run_verification(config);
    } catch (const InvalidSpec &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const oracle::SizeLimitExceeded &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    bool all = true;
    for (const auto &c : checks) {
        all = all && c.passed;
    }
    const bool json = detail::output_format(config, "text") == "json";
    const int rc = detail::with_sink(config, out, err, [&](std::ostream &os) {
        if (json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto &c : checks) {
                arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            }
            os << nlohmann::json{{"checks", arr}, {"all_passed", all}}.dump(2) << '\n';
            return;
        }
        for (const auto &c : checks) {
            os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        }
        os << (all ? "all checks passed\n" : "verification FAILED\n");
    });
    if (rc != kExitOk) {
        return rc;
    }
    return all ? kExitOk : kExitVerification;
}

} // namespace qdense::cli
