#include "wcc/cli.hpp"
#include "wcc/error.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Collisional quantum thermodynamics with weakly coherent ancillae"};
    app.set_version_flag("--version", std::string("wcc ") + std::string(wcc::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config file without running it");
    validate->add_option("--config", validate_path, "JSON experiment config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) {
            wcc::load_config(validate_path);
            std::cout << "valid: " << validate_path << '\n';
            return 0;
        }
        wcc::ExperimentConfig cfg = wcc::load_config(config_path);
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        }
        return wcc::run_scenario(cfg, std::cout, std::cerr);
    } catch (const wcc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
