// SPDX-License-Identifier: Apache-2.0
//
// JSON configuration: every key is optional and falls back to the baseline
// defaults. See README.md for the schema.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcapa/experiments.hpp"

namespace fcapa {

struct RunConfig {
    ExperimentDefaults defaults;
    // Explicit user positions for the solve subcommand; sampled when absent.
    std::vector<Vec3> user_positions;
    SweepConfig sweep; // sweep.defaults mirrors `defaults`
    std::uint64_t seed = 1;
    int threads = 1;
    std::string raw_json; // canonical dump for reproducibility sidecars
};

RunConfig default_config();
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Scenario for the solve subcommand: explicit positions when given, otherwise
// one sampled realization.
Scenario solve_scenario(const RunConfig& cfg, int realization = 0);

} // namespace fcapa
