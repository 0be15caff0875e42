#pragma once

#include <string>

#include "json.hpp"

namespace screens_cli {

using nlohmann::json;

struct ScenarioOutput {
    json result;
    std::string csv; // header + rows, without the comment preamble
    std::string default_format = "json";
};

ScenarioOutput run_energy(const json& cfg);
ScenarioOutput run_verify_babinet(const json& cfg);
ScenarioOutput run_edge_fit(const json& cfg);
ScenarioOutput run_lateral_force(const json& cfg);
ScenarioOutput run_feasibility(const json& cfg);
ScenarioOutput run_convergence_sweep(const json& cfg);

/// Dispatch on cfg["scenario"].
ScenarioOutput dispatch(const json& cfg);

/// Writes the output in the requested format ("json", "csv", or "" for the
/// scenario default), embedding the resolved config and the toolkit version.
/// path "-" writes to stdout.
void emit(const ScenarioOutput& out, const json& resolved_config, const std::string& path,
          const std::string& format);

} // namespace screens_cli
