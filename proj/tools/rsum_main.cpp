#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "rsum/cli.hpp"

namespace {

std::string threshold_arg = "1";
std::string step_arg = "1/100";
std::string margin_arg = "1/200";

void add_weight_options(CLI::App* cmd, rsum::RunConfig& cfg) {
    cmd->add_option("-w,--weights", cfg.weights_arg,
                    "comma separated rationals/decimals; 'v x k' repeats; '@file' reads a file");
    cmd->add_flag("--ingest", cfg.ingest, "accept near-unit input and renormalize exactly");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for randomly signed sums of unit weight vectors"};
    app.require_subcommand(1);

    rsum::RunConfig cfg;

    auto* exact = app.add_subcommand("exact", "exact P(|sum| <= t) as fraction and decimal");
    add_weight_options(exact, cfg);
    exact->add_option("--threshold", threshold_arg, "threshold t (default 1)");
    exact->add_flag("--strict", cfg.strict, "use strict inequality P(|sum| < t)");

    auto* dist = app.add_subcommand("distribution", "full exact law of the signed sum");
    add_weight_options(dist, cfg);
    dist->add_option("--format", cfg.output_format, "json or csv");

    auto* bound = app.add_subcommand("bound", "certified lower bound with proof certificate");
    add_weight_options(bound, cfg);

    auto* sweep = app.add_subcommand("sweep", "grid sweep of a relaxed program family (L or M)");
    sweep->add_option("family", cfg.sweep_which, "L or M")->required();
    sweep->add_option("--margin", margin_arg, "margin of error e (default 1/200)");
    sweep->add_option("--step", step_arg, "grid step (default 1/100)");
    sweep->add_option("--out", cfg.output_path, "CSV output path");

    auto* verify = app.add_subcommand("verify", "run the lemma-check suite on vectors");
    add_weight_options(verify, cfg);
    verify->add_option("--random", cfg.random_count, "number of random vectors");
    verify->add_option("--seed", cfg.random_seed, "random seed");
    verify->add_option("--max-n", cfg.max_n, "dimension cap for random vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? rsum::kExitUsage : rsum::kExitOk;
    }

    try {
        cfg.threshold = rsum::parse_rational(threshold_arg);
        cfg.grid_step = rsum::parse_rational(step_arg);
        cfg.margin_e = rsum::parse_rational(margin_arg);
        if (cfg.grid_step <= 0 || cfg.margin_e <= 0) throw rsum::ParseError("step and margin must be positive");
    } catch (const rsum::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rsum::kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return rsum::run_cli(cfg, std::cout, std::cerr);
}
