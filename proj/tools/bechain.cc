// Copyright 2026 The bechain Authors
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


#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bechain/cli.h"

namespace {

struct Flags {
    std::string K, p, eps, format = "csv";
};

void add_common(CLI::App *sub, bechain::RunConfig &cfg, Flags &flags) {
    sub->add_option("--seed", cfg.seed, "Base seed; trial i uses a seed derived from seed + i");
    sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--K", flags.K, "Sequence lengths, e.g. 8,16,32 or 2..8");
    sub->add_option("--p", flags.p, "p-MACG register sizes, e.g. 1,2");
    sub->add_option("--c", cfg.c, "Deviation constant, eta = c / K");
    sub->add_option("--delta", cfg.delta, "Spectral gap delta, ||H|| <= 1 - delta");
    sub->add_option("--eps", flags.eps, "Target errors, e.g. 1e-2,1e-3");
    sub->add_option("--n", cfg.n, "System qubits");
    sub->add_option("--a", cfg.a, "Ancilla qubits per block encoding");
    sub->add_option("--m", cfg.m, "Measurement ancillas for lb-probe");
    sub->add_option("--trials", cfg.trials, "Trials per parameter tuple");
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts for lb-probe");
    sub->add_option("--config", cfg.config_path, "JSON config for gen-trotter and gen-dyson");
}

std::string describe(const std::string &name) {
    if (name == "uncompute") return "Reduce a Hermitian block encoding to one ancilla and report queries";
    if (name == "macg-sweep") return "Measure p-MACG error against the bound over K and p";
    if (name == "ecg-verify") return "Check the exact compression gadget on random sequences";
    if (name == "lb-probe") return "Search for small-ancilla gadgets that reproduce a product";
    if (name == "oaa-demo") return "Boost approximate gadget outputs with amplitude amplification";
    if (name == "gen-trotter") return "Compress a Trotter sequence";
    if (name == "gen-dyson") return "Compress a time-ordered (Dyson) sequence";
    return "";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Block-encoding uncomputation and compression-gadget experiments"};
    app.require_subcommand(1);
    bechain::RunConfig cfg;
    Flags flags;
    for (const auto &name : bechain::subcommands()) {
        add_common(app.add_subcommand(name, describe(name)), cfg, flags);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return bechain::kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = flags.format == "json" ? bechain::OutputFormat::json : bechain::OutputFormat::csv;
    try {
        if (!flags.K.empty()) {
            cfg.K = bechain::parse_int_list(flags.K);
        }
        if (!flags.p.empty()) {
            cfg.p = bechain::parse_int_list(flags.p);
        }
        if (!flags.eps.empty()) {
            cfg.eps = bechain::parse_double_list(flags.eps);
        }
    } catch (const bechain::UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return bechain::kExitUsage;
    }
    return bechain::run(cfg, std::cout, std::cerr);
}
