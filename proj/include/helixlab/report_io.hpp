#pragma once

#include <json.hpp>
#include <string>

#include "helixlab/helix.hpp"
#include "helixlab/theorems.hpp"

namespace helixlab {

/// Fixed-format float text: %.17g, so every double round-trips and reports
/// diff cleanly across runs.
std::string format_double(double v);

/// Serialize with %.17g floats, sorted object keys, no whitespace surprises.
std::string dump_json(const nlohmann::json& j);

/// Top-level report envelope: {tool_version, config_echo, result}.
nlohmann::json wrap_report(const std::string& tool_version,
                           nlohmann::json config_echo, nlohmann::json result);

nlohmann::json theorem_report_json(const TheoremReport& rep);
nlohmann::json helix_space_json(const HelixSpace& space,
                                const std::vector<HelixAngle>& basis_angles);

/// Parse "e3" or "(0.0, 0.0, 1.0)" into an n-vector. Normalizes the input;
/// warn_drift is set when the given norm deviates from 1 by more than 1e-6.
Vec parse_direction_spec(const std::string& spec, int n, bool* warn_drift = nullptr);

}  // namespace helixlab
