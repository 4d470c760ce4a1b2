// Copyright 2026 The kzcrit Authors
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

// kzcrit command line: build | run | sweep | collapse | scan | xi.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kzcrit/config.h"
#include "kzcrit/error.h"
#include "kzcrit/runner.h"

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

void add_flags(CLI::App *sub, Flags &f) {
    sub->add_option("--config", f.config, "Run configuration (JSON), or a manifest to replay")->required();
    sub->add_option("--out", f.out, "Output directory (overrides output.directory)");
    sub->add_option("--seed", f.seed, "Master seed (overrides noise.master_seed)");
    sub->add_option("--threads", f.threads, "Worker threads, 0 = all cores (overrides output.threads)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Kibble-Zurek drives of the Ising chain: circuits, noisy simulation, scaling analysis"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char *, const char *> commands[] = {
        {"build", "Write the drive circuits"},
        {"run", "Simulate one system size and write observable tables"},
        {"sweep", "Simulate every (L, T, p) point"},
        {"collapse", "Fit the scaling function at fixed exponents"},
        {"scan", "chi^2/N_dof surface over (nu, eta)"},
        {"xi", "Noise length from correlation ratios over a p or depth grid"},
    };
    for (const auto &[name, help] : commands) {
        add_flags(app.add_subcommand(name, help), flags);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        const auto command = kzcrit::command_from_name(app.get_subcommands().front()->get_name());
        kzcrit::RunConfig config = kzcrit::load_config(flags.config);
        if (flags.out) {
            config.output_dir = *flags.out;
        }
        if (flags.seed) {
            config.master_seed = *flags.seed;
        }
        if (flags.threads) {
            config.threads = *flags.threads;
        }
        const auto summary = kzcrit::run_command(command, config);
        std::cout << "wrote " << summary.outputs.size() << " files to " << summary.output_dir << " in "
                  << summary.wall_seconds << " s\n";
        return kzcrit::kExitOk;
    } catch (const kzcrit::ConfigError &e) {
        std::cerr << "kzcrit: " << e.what() << "\n";
        return kzcrit::kExitConfigError;
    } catch (const std::exception &e) {
        std::cerr << "kzcrit: " << e.what() << "\n";
        return kzcrit::exit_code_for(e);
    }
}
