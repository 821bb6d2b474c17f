#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bison/engine.hpp"
#include "bison/environment.hpp"
#include "bison/metrics.hpp"

namespace bison {

/// One parsed config file: simulation tunables plus the scenario reference.
struct RunConfigFile {
    SimulationConfig sim;
    Scenario scenario;
    double width = 10.0;
    double height = 10.0;
};

/// Flat key = value sections; `.json` files carry the same two-level shape.
RunConfigFile load_run_config(const std::string& path);

struct SweepSpecFile {
    std::vector<double> sigmas{0.0, 0.01, 0.05, 0.1};
    std::vector<Scenario> scenarios;
    std::vector<std::uint64_t> seeds;
    SimulationConfig base;
    double width = 10.0;
    double height = 10.0;
    int cap = 1000;
};

SweepSpecFile load_sweep_spec(const std::string& path);

/// Lines of `tick=<int> action=<fail|exit> node=<id>`.
std::vector<FaultEvent> load_fault_plan(const std::string& path);

/// Floats in text artifacts carry 9 significant digits.
std::string format_double(double v);

void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> series);
std::vector<MetricsRecord> parse_metrics_csv(const std::string& path);

void write_trajectory_csv(const std::string& path, std::span<const TrajectoryRow> rows);
std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& path);

void write_final_state_json(const std::string& path, const SimulationResult& result);

void write_cells_json(const std::string& path, int tick,
                      const std::vector<std::pair<int, std::vector<Polygon>>>& cells);

void write_polyline_json(const std::string& path, std::span<const Point2> polyline);

struct SweepRow {
    double sigma = 0.0;
    std::string scenario;
    std::uint64_t seed = 0;
    std::optional<double> final_pac;
    std::optional<double> final_adt;
    std::optional<double> final_cdt;
    std::optional<double> final_u_a;
    std::optional<int> nodes;
    std::optional<int> ticks_to_85pct;
    std::optional<int> ticks_to_90pct;
    std::string termination;
};

void write_summary_csv(const std::string& path, std::span<const SweepRow> rows);

struct RecoveryReportEntry {
    int fault_tick = 0;
    std::string action;
    int node_id = -1;
    double pre_fault_pac = 0.0;
    double min_pac_after = 0.0;
    double pac_drop = 0.0;
    std::optional<int> ticks_to_recover;
    std::optional<double> recovery_cdt;
};

void write_recovery_report_json(const std::string& path,
                                std::span<const RecoveryReportEntry> entries);

}  // namespace bison
