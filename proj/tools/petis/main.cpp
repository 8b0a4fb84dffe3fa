#include "cli.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"petis: periodic event-triggered impulsive stabilization experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(petis_version()));

    cli::GlobalFlags flags;
    std::string out_dir;
    unsigned long long seed = 0;
    auto* out_opt = app.add_option("--out", out_dir, "directory for output files");
    auto* seed_opt = app.add_option("--seed", seed, "seed for sampled constant estimation");

    std::string config_path;
    std::string variant = "c103";

    auto* run = app.add_subcommand("run", "simulate one configuration and write a report");
    run->add_option("config", config_path, "JSON configuration file")->required();
    auto* table1 = app.add_subcommand("table1", "event counts for the six reference scalar cells");
    table1->add_option("--variant", variant, "c103 or a2of0.1")
        ->check(CLI::IsMember({"c103", "a2of0.1"}));
    auto* sweep = app.add_subcommand("sweep", "grid over a, b, delta, gamma and K");
    sweep->add_option("config", config_path, "JSON configuration file with a 'grid' section")->required();
    auto* certify = app.add_subcommand("certify", "certificate constants and gain analysis");
    certify->add_option("config", config_path, "JSON configuration file")->required();
    for (auto* sub : {run, table1, sweep, certify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitConfig;
    }

    if (*out_opt) flags.out_dir = out_dir;
    if (*seed_opt) flags.seed = seed;

    try {
        if (table1->parsed()) {
            if (flags.out_dir) {
                std::error_code ec;
                std::filesystem::create_directories(*flags.out_dir, ec);
                if (ec) cli::config_error("cannot create output directory '" + *flags.out_dir + "'");
            }
            return cli::cmd_table1(variant, flags);
        }
        const bool is_sweep = sweep->parsed();
        cli::RunConfig cfg = cli::parse_config(cli::load_json_file(config_path), is_sweep);
        cli::apply_flags(cfg, flags, run->parsed());
        if (run->parsed()) return cli::cmd_run(cfg);
        if (is_sweep) return cli::cmd_sweep(cfg, flags);
        return cli::cmd_certify(cfg, flags);
    } catch (const cli::CliError& e) {
        std::cerr << "petis: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "petis: unexpected error: " << e.what() << '\n';
        return cli::kExitFailure;
    }
}
