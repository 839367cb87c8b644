#include <string>

#include <CLI11.hpp>

#include "cicf/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Constrained inverse curvature flow simulator and verification suite"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    long seed = 0; // reserved for randomized subcommands; unused by the core

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out-dir", out_dir, "directory for output artifacts");
        sub->add_option("--seed", seed, "seed for randomized subcommands (ignored)");
    };

    CLI::App* run = app.add_subcommand("run", "evolve the flow and audit the trace");
    CLI::App* check = app.add_subcommand("check", "static audit of the configured surface");
    CLI::App* profile = app.add_subcommand("slice-profile", "emit the slice profile table");
    CLI::App* sweep = app.add_subcommand("sweep", "grid-refinement ladder with observed orders");
    for (auto* sub : {run, check, profile, sweep})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 4;
    }

    if (run->parsed())
        return cicf::cmd_run(config_path, out_dir);
    if (check->parsed())
        return cicf::cmd_check(config_path, out_dir);
    if (profile->parsed())
        return cicf::cmd_slice_profile(config_path, out_dir);
    return cicf::cmd_sweep(config_path, out_dir);
}
