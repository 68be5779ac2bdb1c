#include <omp.h>

#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dengue/errors.hpp"

using namespace dengue;

int main(int argc, char** argv) {
    CLI::App app{"Seasonal SEIR dengue toolkit: ODE fitting, CTMC outbreak risk, reproduction numbers"};
    app.require_subcommand(1, 1);
    app.failure_message(CLI::FailureMessage::help);

    const RunConfig defaults;
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::string> config_files;
    std::map<std::string, CLI::App*> subs;
    cli::CommandFlags flags;

    for (const auto& cmd : cli::commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
        sub->add_option("--config", config_files[cmd.name], "key = value config file; flags override it");
        for (const auto& key : config_keys()) {
            std::string names = "--" + key.name;
            if (key.name == "beta-peak") names += ",--beta-p";
            sub->add_option(names, values[cmd.name][key.name], key.help)->default_str(key.get(defaults));
        }
        if (cmd.name == "outbreak") sub->add_flag("--path-log", flags.path_log, "also write paths.csv");
        subs[cmd.name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kUsageError;
    }

    for (const auto& cmd : cli::commands()) {
        CLI::App* sub = subs[cmd.name];
        if (!sub->parsed()) continue;
        try {
            RunConfig cfg;
            if (!config_files[cmd.name].empty()) cfg = load_config(config_files[cmd.name]);
            for (const auto& key : config_keys())
                if (sub->count("--" + key.name) > 0) set_config_value(cfg, key.name, values[cmd.name][key.name]);
            if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
            cmd.run(cfg, flags);
        } catch (const ConfigError& e) {
            std::fprintf(stderr, "usage error: %s\n\n%s", e.what(), sub->help().c_str());
            return cli::kUsageError;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return cli::kDomainError;
        }
    }
    return cli::kOk;
}
