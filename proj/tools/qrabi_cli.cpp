#include "qrabi/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generalized Einstein coefficients and quantum Rabi dynamics"};
    app.require_subcommand(1);

    qrabi::cli::CliOptions options;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "Run configuration (JSON)")
            ->required();
        cmd->add_option("--out", options.out_path, "Output file (default: stdout)");
    };

    add_common(app.add_subcommand("constants", "Report derived scenario constants as JSON"));
    add_common(app.add_subcommand("rabi", "Transition-probability time series (CSV)"));
    auto* coeff = app.add_subcommand("coefficients",
                                     "Generalized Einstein coefficient rates (CSV)");
    add_common(coeff);
    coeff->add_option("--mode", options.mode, "exact | approx (default approx)")
        ->check(CLI::IsMember({"exact", "approx"}));
    add_common(app.add_subcommand("dynamics", "Population dynamics and entropy (CSV)"));
    auto* fit = app.add_subcommand("fit", "Least-squares fit of a trace (JSON)");
    add_common(fit);
    fit->add_option("--data", options.data_path, "Trace CSV to fit")->required();
    fit->add_option("--seed", options.seed, "Optimizer seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    options.command = app.get_subcommands().front()->get_name();
    return qrabi::cli::run_cli(options, std::cerr);
}
