#include "bison/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "bison/errors.hpp"

namespace bison {

namespace fs = std::filesystem;

namespace {

std::optional<int> first_tick_reaching(std::span<const MetricsRecord> series, double threshold) {
    for (const MetricsRecord& r : series) {
        if (r.pac >= threshold) return r.tick;
    }
    return std::nullopt;
}

int exit_code_for(Termination reason) {
    switch (reason) {
        case Termination::Converged:
        case Termination::CoverageStall: return 0;
        case Termination::TickLimit: return 2;
        case Termination::Continue: break;
    }
    return 1;
}

struct RunArtifacts {
    SimulationResult result;
    std::vector<FaultEvent> events;
};

RunArtifacts execute_manifest(const RunManifest& manifest) {
    SimulationConfig config = manifest.config;
    apply_seed_override(config);
    config.finalize();
    for (int tick : manifest.snapshots_at) {
        if (tick > config.max_ticks) throw ConfigError("snapshot tick exceeds max_ticks");
    }

    const EnvironmentSpec env =
        build_scenario(manifest.scenario, manifest.width, manifest.height, config.seed);

    RunArtifacts artifacts;
    if (manifest.fault_plan_path) {
        artifacts.events = load_fault_plan(*manifest.fault_plan_path);
    }
    artifacts.result = run(config, env, artifacts.events, manifest.snapshots_at);
    return artifacts;
}

void write_run_outputs(const RunManifest& manifest, const RunArtifacts& artifacts) {
    fs::create_directories(manifest.output_dir);
    const fs::path dir(manifest.output_dir);
    const SimulationResult& result = artifacts.result;

    write_metrics_csv((dir / "metrics.csv").string(), result.series);
    write_trajectory_csv((dir / "trajectory.csv").string(), result.trajectory);
    write_final_state_json((dir / "final_state.json").string(), result);
    for (const auto& [tick, cells] : result.cell_snapshots) {
        write_cells_json((dir / ("cells_" + std::to_string(tick) + ".json")).string(), tick, cells);
    }
    for (const auto& [node_id, path] : result.exit_paths) {
        write_polyline_json((dir / ("exit_path_" + std::to_string(node_id) + ".json")).string(),
                            path);
    }
}

}  // namespace

void apply_seed_override(SimulationConfig& config) {
    if (const char* v = std::getenv("BISON_SEED")) {
        try {
            config.seed = std::stoull(v);
        } catch (const std::exception&) {
            throw ConfigError("BISON_SEED is not an integer");
        }
    }
}

int cmd_run(const RunManifest& manifest) {
    RunArtifacts artifacts;
    try {
        artifacts = execute_manifest(manifest);
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }
    write_run_outputs(manifest, artifacts);
    return exit_code_for(artifacts.result.reason);
}

int cmd_sweep(const SweepSpec& sweep) {
    struct Job {
        Scenario scenario;
        double sigma = 0.0;
        std::uint64_t seed = 0;
    };
    std::vector<Job> jobs;
    for (const Scenario& scenario : sweep.spec.scenarios) {
        for (double sigma : sweep.spec.sigmas) {
            for (std::uint64_t seed : sweep.spec.seeds) {
                jobs.push_back({scenario, sigma, seed});
            }
        }
    }

    std::vector<SweepRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    const int n_workers = std::max(1, std::min<int>(sweep.jobs, static_cast<int>(jobs.size())));

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            SweepRow& row = rows[i];
            row.sigma = job.sigma;
            row.scenario = job.scenario.tag();
            row.seed = job.seed;
            try {
                SimulationConfig config = sweep.spec.base;
                config.sigma = job.sigma;
                config.seed = job.seed;
                config.finalize();
                const EnvironmentSpec env =
                    build_scenario(job.scenario, sweep.spec.width, sweep.spec.height, job.seed);
                const SimulationResult result = run(config, env);

                const MetricsRecord& last = result.series.back();
                row.final_pac = last.pac;
                row.final_adt = last.adt;
                row.final_cdt = last.cdt;
                row.final_u_a = last.u_a;
                row.nodes = last.active_nodes;
                row.ticks_to_85pct = first_tick_reaching(result.series, 0.85);
                row.ticks_to_90pct = first_tick_reaching(result.series, 0.90);
                row.termination = termination_name(result.reason);
            } catch (const std::exception& e) {
                row.termination = std::string("error: ") + e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    fs::create_directories(sweep.output_dir);
    write_summary_csv((fs::path(sweep.output_dir) / "summary.csv").string(), rows);
    return 0;
}

int cmd_faults(const RunManifest& manifest) {
    if (!manifest.fault_plan_path) {
        std::cerr << "faults: --fault-plan is required\n";
        return 1;
    }
    RunArtifacts artifacts;
    try {
        artifacts = execute_manifest(manifest);
        if (artifacts.events.empty()) throw ConfigError("fault plan is empty");
    } catch (const std::exception& e) {
        std::cerr << "faults failed: " << e.what() << "\n";
        return 1;
    }
    write_run_outputs(manifest, artifacts);

    // Recovery accounting per event: coverage just before the fault, the dip
    // after it, and the first tick back within 1% of the pre-fault value.
    const auto& series = artifacts.result.series;
    std::vector<RecoveryReportEntry> report;
    for (const FaultEvent& ev : artifacts.events) {
        RecoveryReportEntry entry;
        entry.fault_tick = ev.tick;
        entry.action = ev.action == FaultEvent::Action::Fail ? "fail" : "exit";
        entry.node_id = ev.node_id;

        double pre_pac = 0.0;
        double pre_cdt = 0.0;
        for (const MetricsRecord& r : series) {
            if (r.tick <= ev.tick) {
                pre_pac = r.pac;
                pre_cdt = r.cdt;
            }
        }
        entry.pre_fault_pac = pre_pac;
        entry.min_pac_after = pre_pac;
        for (const MetricsRecord& r : series) {
            if (r.tick <= ev.tick) continue;
            entry.min_pac_after = std::min(entry.min_pac_after, r.pac);
            if (!entry.ticks_to_recover && r.pac >= pre_pac - 0.01) {
                entry.ticks_to_recover = r.tick - ev.tick;
                entry.recovery_cdt = r.cdt - pre_cdt;
            }
        }
        entry.pac_drop = pre_pac - entry.min_pac_after;
        report.push_back(std::move(entry));
    }
    write_recovery_report_json(
        (fs::path(manifest.output_dir) / "recovery_report.json").string(), report);
    return exit_code_for(artifacts.result.reason);
}

}  // namespace bison
