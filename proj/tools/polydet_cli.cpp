#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polydet/config.hpp"
#include "polydet/errors.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
    using namespace polydet;

    CLI::App app{"Determinants of Laplacians for flat conical metrics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", POLYDET_VERSION);

    std::string config_path, out_path, format, mu_list;
    double tol = 0;
    for (const std::string& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "job configuration (JSON)")->required();
        sub->add_option("--out", out_path, "write the result document here instead of stdout");
        sub->add_option("--format", format, "csv or doc")->check(CLI::IsMember({"csv", "doc"}));
        sub->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
        sub->add_option("--mu-list", mu_list, "comma-separated negative mu values");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kInputError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        JobConfig cfg = JobConfig::load(config_path);
        if (!cfg.command.empty() && cfg.command != command)
            throw InputError("config is for '" + cfg.command + "', not '" + command + "'");
        cfg.command = command;
        if (!format.empty()) cfg.format = format;
        if (tol > 0) cfg.tol = tol;
        if (!mu_list.empty()) cfg.mu_list = parse_mu_list(mu_list);
        const auto base = std::filesystem::absolute(config_path).parent_path().string();
        const cli::RunResult r = cli::run(cfg, base);
        if (out_path.empty()) {
            std::cout << r.document;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw InputError("cannot write " + out_path);
            out << r.document;
        }
        if (r.exit_code == cli::kVerificationFailed) std::cerr << "polydet: verification failed\n";
        return r.exit_code;
    } catch (const InputError& e) {
        std::cerr << "polydet: " << e.what() << "\n";
        return cli::kInputError;
    } catch (const ConvergenceError& e) {
        std::cerr << "polydet: " << e.what() << "\n";
        return cli::kConvergenceError;
    }
}
