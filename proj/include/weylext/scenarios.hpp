// scenarios.hpp — reproducible batch experiments behind the CLI. Each
// scenario consumes a JSON config (missing keys fall back to defaults),
// returns a machine-readable report and a CSV table, and signals its outcome
// through the exit code: 0 all checks passed, 1 a tolerance failed, 2 bad
// configuration.

#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace weylext::scenarios {

using json = nlohmann::ordered_json;

struct ScenarioResult {
    json report;           // full report, stable key order
    std::string csv;       // per-scenario table
    std::string csv_name;  // suggested file name
    int exit_code{0};
};

json default_config(const std::string& name);

ScenarioResult run_scenario(const std::string& name, const json& config, unsigned long seed);

// write report JSON + CSV into out_dir; returns the report path
std::string write_outputs(const ScenarioResult& r, const std::string& name,
                          const std::string& out_dir);

}  // namespace weylext::scenarios
