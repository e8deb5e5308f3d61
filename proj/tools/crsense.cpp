#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsense/config.hpp"
#include "crsense/presets.hpp"
#include "crsense/runner.hpp"

namespace {

int cmd_run(const std::string& preset_name, const std::string& config_path,
            const crsense::cli::RunOptions& opts) {
    using namespace crsense;
    try {
        if (!preset_name.empty()) {
            const cli::Preset preset = cli::make_preset(preset_name);
            cli::run_preset_to_files(preset, opts, std::cout);
        } else {
            cli::run_config_file(config_path, opts, std::cout);
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // unknown presets/keys are usage errors
        const std::string msg = e.what();
        return msg.find("unknown") != std::string::npos ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_validate(const std::string& path) {
    using namespace crsense;
    try {
        const config::ConfigMap map = config::ConfigMap::parse_file(path);
        std::vector<std::string> violations;
        (void)config::scenario_from_map(map, violations);
        if (violations.empty()) {
            std::cout << path << ": valid\n";
            return 0;
        }
        std::cout << path << ": " << violations.size() << " violation(s)\n";
        for (const std::string& v : violations) std::cout << "  " << v << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crsense: channel-aware spectrum-sensing strategy simulator"};
    app.require_subcommand(1);

    std::string preset_name, config_path, out_dir = ".";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    int replications = 0;
    bool svg = false;

    CLI::App* run = app.add_subcommand("run", "run a preset or a config file");
    run->add_option("preset", preset_name,
                    "preset name (fig3, fig5, fig6, fig7, fig8)");
    CLI::Option* cfg_opt = run->add_option("--config", config_path, "scenario config file");
    run->add_option("--set", overrides, "override a config key, e.g. --set fading.rho=0.3");
    run->add_option("--out", out_dir, "output directory");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "master seed");
    CLI::Option* reps_opt = run->add_option("--replications", replications, "replication count");
    run->add_flag("--svg", svg, "also write an SVG line plot");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("file", validate_path, "config file to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (validate->parsed()) return cmd_validate(validate_path);

    if (preset_name.empty() == config_path.empty()) {
        std::cerr << "error: give exactly one of <preset> or --config FILE\n";
        return 2;
    }
    (void)cfg_opt;

    crsense::cli::RunOptions opts;
    opts.out_dir = out_dir;
    opts.overrides = overrides;
    opts.svg = svg;
    if (seed_opt->count() > 0) opts.seed = seed;
    if (reps_opt->count() > 0) opts.replications = replications;
    return cmd_run(preset_name, config_path, opts);
}
