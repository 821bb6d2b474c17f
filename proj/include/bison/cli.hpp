#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bison/engine.hpp"
#include "bison/environment.hpp"
#include "bison/io.hpp"

namespace bison {

struct RunManifest {
    SimulationConfig config;
    Scenario scenario;
    double width = 10.0;
    double height = 10.0;
    std::optional<std::string> fault_plan_path;
    std::string output_dir;
    std::vector<int> snapshots_at;
};

struct SweepSpec {
    SweepSpecFile spec;
    std::string output_dir;
    int jobs = 1;
};

// Exit codes: 0 converged/coverage_stall, 1 invalid config or runtime
// failure, 2 tick limit.
int cmd_run(const RunManifest& manifest);
int cmd_sweep(const SweepSpec& sweep);
int cmd_faults(const RunManifest& manifest);

/// BISON_SEED, when set, overrides the configured seed.
void apply_seed_override(SimulationConfig& config);

}  // namespace bison
