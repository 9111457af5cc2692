#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "weblab/abelian_rank.hpp"
#include "weblab/foliations.hpp"
#include "weblab/rank_quartic.hpp"

namespace weblab {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    ConfocalFamily family{2.0, 1.0};
    WebKind kind = WebKind::cartesian;
    double lambda0 = 0;
    std::vector<std::string> foliations;  // custom kind only
    IntegralChoice integrals = IntegralChoice::natural;
    Box box;
    double margin = 0.05;
    CollocationConfig collocation;
    double ode_tol = 1e-11;
    double fit_tol = 1e-8;
    double incidence_tol = 1e-5;

    WebSpec web_spec() const;
};

ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json to_json(const ExperimentConfig& c);

enum class Command { verify, hexagon, rank, quartic, frobenius, all };
Command parse_command(const std::string& s);
std::string to_string(Command c);

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunResult {
    Json report;
    std::vector<Verdict> verdicts;
    std::vector<std::string> errors;
    ArcSet arcs;  // filled by the quartic suite

    bool pass() const;
    // 0 all verdicts pass, 1 some verdict fails, 2 a suite raised an error
    int exit_code() const;
};

// Runs the suites behind the command; suite errors are recorded, not thrown.
// Timing goes to the log stream (if any), never into the report.
RunResult run(Command cmd, const ExperimentConfig& cfg, std::ostream* log = nullptr);

// CSV with header foliation,integral,X,Y,Z; throws on an empty arc set.
void export_arcs(const ArcSet& arcs, std::ostream& out);

std::string dump_report(const Json& report);

}  // namespace weblab
