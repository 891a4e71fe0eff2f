// Copyright 2026 The enstele Authors
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
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "enstele/commands.hpp"
#include "enstele/errors.hpp"

namespace {

struct Subcommand {
    CLI::App *app;
    enstele::Command command;
};

void add_coefficient_flags(CLI::App *sub, enstele::RunConfig &cfg) {
    sub->add_option("--c11", cfg.c11, "Diagonal coefficient c11 (c22 = 1 - c11)")->capture_default_str();
    sub->add_option("--c12re", cfg.c12_re, "Real part of c12 (c21 = conj(c12))")->capture_default_str();
    sub->add_option("--c12im", cfg.c12_im, "Imaginary part of c12")->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
    enstele::RunConfig cfg;
    std::string format = "table";
    std::string out_path;
    bool sweep_correct = false;

    CLI::App app{"Teleportation of two-level ensembles, with sweeps and audits"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");
    app.add_option("--seed", cfg.seed, "Seed for sampled commands")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Audit tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);

    std::vector<Subcommand> subs;
    subs.push_back({app.add_subcommand("bell-audit", "Bell-operator algebra and PPT audit"),
                    enstele::Command::BellAudit});

    auto *teleport = app.add_subcommand("teleport", "Run one teleportation session");
    add_coefficient_flags(teleport, cfg);
    teleport->add_option("--prep", cfg.prep, "Preparation: bell1..bell4 or paut")->capture_default_str();
    teleport->add_option("--message", cfg.message, "Classical message: twobits, ping or preagreed")
        ->check(CLI::IsMember({"twobits", "ping", "preagreed"}));
    teleport->add_flag("--correct,!--no-correct", cfg.bob_acts, "Whether Bob applies a correction");
    subs.push_back({teleport, enstele::Command::Teleport});

    auto *sweep = app.add_subcommand("sweep", "Fidelity over a grid of input states");
    sweep->add_option("--prep", cfg.prep, "Preparation: bell1..bell4 or paut")->capture_default_str();
    sweep->add_option("--resolution", cfg.resolution, "Grid points per real axis (>= 2)")->capture_default_str();
    sweep->add_option("--phases", cfg.phases, "Number of phases of c12 (>= 1)")->capture_default_str();
    sweep->add_flag("--correct,!--no-correct", sweep_correct, "Whether Bob applies a correction");
    subs.push_back({sweep, enstele::Command::Sweep});

    subs.push_back({app.add_subcommand("paut-audit", "Audit of the automatic-teleportation operator"),
                    enstele::Command::PautAudit});

    auto *appendix = app.add_subcommand("appendix-check", "Compare the two state-update conventions");
    appendix->add_option("--samples", cfg.samples, "Random coefficient vectors per preparation")
        ->capture_default_str();
    subs.push_back({appendix, enstele::Command::AppendixCheck});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return enstele::kExitInvalidInput;
    }

    try {
        cfg.format = enstele::parse_format(format);
        enstele::Command command = enstele::Command::BellAudit;
        for (const auto &s : subs) {
            if (s.app->parsed()) {
                command = s.command;
            }
        }
        if (command == enstele::Command::Sweep) {
            cfg.bob_acts = sweep_correct;
        }
        const enstele::Report report = enstele::run_command(command, cfg);
        const std::string text = enstele::render(report, cfg.format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!(file << text)) {
                std::cerr << "error: cannot write " << out_path << '\n';
                return enstele::kExitInvalidInput;
            }
        }
        return enstele::exit_status(report);
    } catch (const enstele::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return enstele::kExitInvalidInput;
}
