// weblab <command> --config <path> [--out <path>] [--seed N] [--arcs <path>]

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "weblab/cli_report.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"numerical experiments on webs of confocal conics"};
    std::string command, config_path, out_path, arcs_path;
    long long seed = -1;
    app.add_option("command", command, "verify | hexagon | rank | quartic | frobenius | all")->required();
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--seed", seed, "override collocation.seed")->check(CLI::NonNegativeNumber);
    app.add_option("--arcs", arcs_path, "write quartic arc samples as CSV");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    weblab::RunResult res;
    try {
        const auto cmd = weblab::parse_command(command);
        auto cfg = weblab::load_config(config_path);
        if (seed >= 0)
            cfg.collocation.seed = static_cast<unsigned long long>(seed);
        res = weblab::run(cmd, cfg, &std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "weblab: " << e.what() << "\n";
        return 2;
    }

    const std::string text = weblab::dump_report(res.report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!(out << text)) {
            std::cerr << "weblab: cannot write " << out_path << "\n";
            return 2;
        }
    }
    if (!arcs_path.empty()) {
        try {
            std::ofstream out(arcs_path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + arcs_path);
            weblab::export_arcs(res.arcs, out);
        } catch (const std::exception& e) {
            std::cerr << "weblab: " << e.what() << "\n";
            return 2;
        }
    }
    for (const auto& e : res.errors)
        std::cerr << "error: " << e << "\n";
    for (const auto& v : res.verdicts)
        std::cerr << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
    return res.exit_code();
}
