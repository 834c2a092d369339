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

// qdense: capacity reports, Monte Carlo round trips, capacity surfaces and
// oracle verification for probabilistic dense coding channels.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdense/cli.hpp"

namespace {

using qdense::cli::RunConfig;

struct Flags {
    std::string config_file;
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t pairs = 0;
    std::vector<std::string> alphas_sq;
    std::vector<std::string> alphas;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    std::string out;
    std::string format;
    std::string phase_divisor;
    std::size_t verify_specs = 0;
};

struct Options {
    CLI::Option *p = nullptr;
    CLI::Option *q = nullptr;
    CLI::Option *pairs = nullptr;
    CLI::Option *alphas_sq = nullptr;
    CLI::Option *alphas = nullptr;
    CLI::Option *trials = nullptr;
    CLI::Option *seed = nullptr;
    CLI::Option *steps = nullptr;
    CLI::Option *out = nullptr;
    CLI::Option *format = nullptr;
    CLI::Option *phase_divisor = nullptr;
    CLI::Option *verify_specs = nullptr;
};

Options add_common(CLI::App *cmd, Flags &f) {
    Options o;
    cmd->add_option("--config", f.config_file, "JSON config file; flags override its values");
    o.p = cmd->add_option("--p", f.p, "sender (Alice) particle dimension");
    o.q = cmd->add_option("--q", f.q, "receiver (Bob) particle dimension");
    o.pairs = cmd->add_option("--pairs", f.pairs, "number of entangled pairs");
    o.alphas_sq = cmd->add_option("--alphas-sq", f.alphas_sq,
                                  "squared coefficients, one comma list per pair");
    o.alphas = cmd->add_option("--alphas", f.alphas, "raw coefficients, one comma list per pair");
    o.alphas_sq->excludes(o.alphas);
    o.seed = cmd->add_option("--seed", f.seed, "random seed");
    o.trials = cmd->add_option("--trials", f.trials, "number of trials / random specs");
    o.steps = cmd->add_option("--steps", f.steps, "surface grid points per axis");
    o.out = cmd->add_option("--out", f.out, "output path (default stdout)");
    o.format = cmd->add_option("--format", f.format, "json or text")
                   ->check(CLI::IsMember({"json", "text"}));
    return o;
}

RunConfig resolve(const Flags &f, const Options &o, bool trials_are_specs) {
    RunConfig config;
    if (!f.config_file.empty()) {
        qdense::cli::load_config_file(f.config_file, config);
    }
    if (o.p->count()) config.p = f.p;
    if (o.q->count()) config.q = f.q;
    if (o.pairs->count()) config.pairs = f.pairs;
    if (o.alphas_sq->count() || o.alphas->count()) {
        const bool squared = o.alphas_sq->count() > 0;
        config.alphas.clear();
        for (const auto &list : squared ? f.alphas_sq : f.alphas) {
            config.alphas.push_back(qdense::cli::parse_coefficient_list(list));
        }
        config.alphas_squared = squared;
    }
    if (o.seed->count()) config.seed = f.seed;
    if (o.trials->count()) {
        if (trials_are_specs) {
            config.verify_specs = f.trials;
        } else {
            config.trials = f.trials;
        }
    }
    if (o.steps->count()) config.steps = f.steps;
    if (o.out->count()) config.out = f.out;
    if (o.format->count()) config.format = f.format;
    if (o.phase_divisor && o.phase_divisor->count()) config.phase_divisor = f.phase_divisor;
    return config;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Probabilistic dense coding over non-symmetric entangled channels"};
    app.require_subcommand(1);

    Flags info_flags, sim_flags, surface_flags, verify_flags;
    auto *info = app.add_subcommand("info", "branch table, average information, classical cost");
    auto *simulate = app.add_subcommand("simulate", "seeded Monte Carlo protocol round trips");
    auto *surface = app.add_subcommand("surface", "CSV capacity surface for p=3, q=2, N=2");
    auto *verify = app.add_subcommand("verify", "run the brute-force oracle suite");

    const Options info_opts = add_common(info, info_flags);
    const Options sim_opts = add_common(simulate, sim_flags);
    const Options surface_opts = add_common(surface, surface_flags);
    Options verify_opts = add_common(verify, verify_flags);
    verify_opts.phase_divisor =
        verify->add_option("--phase-divisor", verify_flags.phase_divisor,
                           "encoding phase divisor: q-r (corrected) or q (naive)")
            ->check(CLI::IsMember({"q", "q-r"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qdense::cli::kExitValidation;
    }

    try {
        if (*info) {
            return qdense::cli::cmd_info(resolve(info_flags, info_opts, false), std::cout,
                                         std::cerr);
        }
        if (*simulate) {
            return qdense::cli::cmd_simulate(resolve(sim_flags, sim_opts, false), std::cout,
                                             std::cerr);
        }
        if (*surface) {
            return qdense::cli::cmd_surface(resolve(surface_flags, surface_opts, false),
                                            std::cout, std::cerr);
        }
        if (*verify) {
            return qdense::cli::cmd_verify(resolve(verify_flags, verify_opts, true), std::cout,
                                           std::cerr);
        }
    } catch (const qdense::InvalidSpec &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qdense::cli::kExitValidation;
    }
    return qdense::cli::kExitValidation;
}
