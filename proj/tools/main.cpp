// Copyright 2026 The cavity-entangler Authors
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

#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char **argv) {
    using namespace cavent::cli;

    CLI::App app{"Cavity-mediated cluster and W state preparation"};
    app.require_subcommand(1);
    std::string config_path;
    CliOptions opts;
    std::string convention = "normalized";

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file")->required();
        cmd->add_option("--fidelity-convention", convention, "normalized or raw overlap")
            ->check(CLI::IsMember({"normalized", "raw"}));
    };
    CLI::App *run = app.add_subcommand("run", "Run one protocol and report F and P");
    add_common(run);
    run->add_option("--dump-state", opts.dump_state, "Write the output register state to this file");
    run->add_option("--dump-h", opts.dump_h, "Write the effective Hamiltonian matrix to this file");
    CLI::App *sweep = app.add_subcommand("sweep", "Evaluate F and P over a kappa/lambda and N grid");
    add_common(sweep);
    sweep->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_flag("--no-timing", [&](std::int64_t) { opts.timing = false; }, "Write runtime_s as 0");
    CLI::App *validate = app.add_subcommand("validate", "Run the consistency checks");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::argument;
    }
    opts.convention = convention == "raw" ? FidelityConvention::raw : FidelityConvention::normalized;

    return guarded(
        [&] {
            const RunConfig cfg = load_config(config_path);
            if (run->parsed()) {
                return cmd_run(cfg, opts, std::cout);
            }
            if (sweep->parsed()) {
                return cmd_sweep(cfg, opts, std::cout);
            }
            return cmd_validate(cfg, std::cout);
        },
        std::cerr);
}
