#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wolffpot/measure.hpp"
#include "wolffpot/solver.hpp"

namespace wolffpot {

/// Process exit codes of the scenario pipeline (also the CLI contract).
enum ExitCode {
    kExitOk = 0,
    kExitChecksFailed = 1,   // a requested check failed or the solve was refused
    kExitParseError = 2,     // config does not parse / bad usage
    kExitValidationError = 3,  // parameters or scenario semantically invalid
    kExitNumericError = 4,   // quadrature/solver numeric failure
};

struct GridSpec {
    double r_min = 1e-2;
    double r_max = 1e2;
    int points = 128;
    std::string spacing = "log";
};

struct Scenario {
    std::string name;
    Params params;
    MeasurePtr measure;
    std::string measure_tag;
    GridSpec grid;
    SolverConfig solver;
    std::vector<std::string> checks;
    std::string output_dir;
};

RadialFunction radial_function_from_json(const nlohmann::json& j);
MeasurePtr measure_from_json(const nlohmann::json& j, int dim);
Params params_from_json(const nlohmann::json& j);

/// Parses and semantically validates a scenario document.
/// JSON shape errors raise nlohmann exceptions (parse class); semantic
/// problems raise std::invalid_argument (validation class).
Scenario scenario_from_json(const nlohmann::json& j);

struct RunOutcome {
    int exit_code = kExitOk;
    bool solve_refused = false;
    bool all_checks_passed = false;
    nlohmann::json report;
    std::string output_dir;
};

/// Runs checks and the solve pipeline, writing profiles.csv, trace.csv,
/// report.json and meta.json into the output directory (atomically).
/// Identical scenarios produce byte-identical CSV/JSON data files; run
/// metadata (timestamps) lives only in meta.json.
RunOutcome run_scenario(const Scenario& sc, const std::string& out_override = "");

/// File-based front end mapping all failure classes to the exit-code
/// contract, with a one-line machine-readable diagnostic on `diag`.
int run_scenario_file(const std::string& path, const std::string& out_override,
                      std::ostream& diag);

nlohmann::json to_json(const ConditionReport& rep);

}  // namespace wolffpot
