#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/output.hpp"

using namespace wqed;
using namespace wqed::cli;

namespace {

int fail(int status, const std::string& what) {
    std::cerr << "wqed: " << what << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit waveguide QED simulator", "wqed"};
    app.set_version_flag("--version", std::string(version()));

    std::string experiment, config_path;
    std::string names;
    for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
    app.add_option("experiment", experiment, "one of: " + names)->required();
    app.add_option("--config", config_path, "key = value file; flags override it");

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_opts;
    for (const auto& k : key_specs()) {
        const std::string hint = k.kind == Kind::Angle ? " (accepts a pi suffix)" : "";
        flag_opts[k.name] = app.add_option("--" + k.name, flag_values[k.name], k.help + hint);
    }
    app.footer(
        "Defaults depend on the experiment. WQED_THREADS caps the number of worker threads.\n"
        "Exit status: 1 configuration error, 2 numerical failure, 3 I/O error.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(1, "parse_arguments: " + std::string(e.what()));
    }

    try {
        KeyValues file, flags;
        if (!config_path.empty()) file = read_config_file(config_path);
        for (const auto& [name, opt] : flag_opts)
            if (opt->count() > 0) flags[name] = flag_values[name];
        const ExperimentConfig cfg(experiment, file, flags);
        const std::string& out = cfg.text("output");
        if (out != "-" && !std::ofstream(out, std::ios::app))
            throw IoError("emit", "cannot open " + out + " for writing");
        const Result r = run(cfg);
        emit(r, cfg.text("output"), cfg.text("format"));
    } catch (const ConfigError& e) {
        return fail(1, e.what());
    } catch (const DomainError& e) {
        return fail(1, e.what());
    } catch (const IoError& e) {
        return fail(3, e.what());
    } catch (const NumericalError& e) {
        return fail(2, e.what());
    } catch (const std::exception& e) {
        return fail(2, std::string("internal: ") + e.what());
    }
    return 0;
}
