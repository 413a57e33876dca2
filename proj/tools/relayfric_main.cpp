#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relayfric/config.hpp"
#include "relayfric/errors.hpp"
#include "relayfric/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"relay-feedback friction compensation: simulation and analysis toolkit"};
    app.require_subcommand(0, 0);

    std::string command;
    std::string config_path;
    std::string preset;
    std::string out_dir;
    bool plot = false;

    app.add_option("command", command,
                   "one of: simulate, sweep-gain, optimal-gain, harmonic-balance, limit-cycle")
        ->required();
    app.add_option("--config", config_path, "path to a JSON scenario config");
    app.add_option("--preset", preset, "named built-in scenario");
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_flag("--plot", plot, "also emit SVG plots");

    CLI11_PARSE(app, argc, argv);

    const char* log_env = std::getenv("RELAYFRIC_LOG");
    const bool verbose = log_env && std::string(log_env) != "0" && std::string(log_env) != "";

    try {
        const relayfric::Command cmd = relayfric::parse_command(command);
        relayfric::ScenarioConfig cfg;
        if (!config_path.empty()) {
            nlohmann::json doc;
            {
                std::ifstream in(config_path);
                if (!in) throw relayfric::ConfigError("cannot open config '" + config_path + "'");
                try {
                    in >> doc;
                } catch (const nlohmann::json::exception& e) {
                    throw relayfric::ConfigError(std::string("malformed config: ") + e.what());
                }
            }
            if (!preset.empty() && !doc.contains("preset")) doc["preset"] = preset;
            cfg = relayfric::parse_config(doc);
        } else if (!preset.empty()) {
            cfg = relayfric::parse_config(nlohmann::json{{"preset", preset}});
        } else {
            throw relayfric::ConfigError("either --config or --preset is required");
        }
        if (plot) cfg.outputs.plot = true;

        if (verbose)
            std::cerr << "relayfric: " << command << " preset='" << cfg.preset << "' out='"
                      << out_dir << "'\n";
        const int status = relayfric::run(cmd, cfg, out_dir);
        if (verbose) std::cerr << "relayfric: exit " << status << "\n";
        return status;
    } catch (const relayfric::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
