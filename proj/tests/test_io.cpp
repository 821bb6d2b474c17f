#include <doctest.h>

#include <cstdlib>
#include <random>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bison/cli.hpp"
#include "bison/errors.hpp"
#include "bison/io.hpp"

using namespace bison;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bison_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("run config parsing: ini sections and json alternative") {
    TempDir tmp;
    write_file(tmp.file("run.ini"), R"ini(# comment
[simulation]
r_s = 1.0
sigma = 0.05
seed = 42
max_ticks = 50

[scenario]
kind = pillars(7)
width = 12
height = 9
)ini");
    const RunConfigFile ini = load_run_config(tmp.file("run.ini"));
    CHECK(ini.sim.sigma == 0.05);
    CHECK(ini.sim.seed == 42);
    CHECK(ini.sim.max_ticks == 50);
    CHECK(ini.scenario.tag() == "pillars(7)");
    CHECK(ini.width == 12.0);
    CHECK(ini.height == 9.0);

    write_file(tmp.file("run.json"), R"json({
  "simulation": {"r_s": 1.0, "sigma": 0.05, "seed": 42, "max_ticks": 50},
  "scenario": {"kind": "pillars(7)", "width": 12, "height": 9}
})json");
    const RunConfigFile json = load_run_config(tmp.file("run.json"));
    CHECK(json.sim.sigma == ini.sim.sigma);
    CHECK(json.sim.seed == ini.sim.seed);
    CHECK(json.scenario.tag() == ini.scenario.tag());
    CHECK(json.width == ini.width);

    write_file(tmp.file("bad.ini"), "just some text\n");
    CHECK_THROWS_AS(load_run_config(tmp.file("bad.ini")), ConfigError);
    CHECK_THROWS_AS(load_run_config(tmp.file("missing.ini")), ConfigError);
}

TEST_CASE("sweep spec parsing with defaults and the cap") {
    TempDir tmp;
    write_file(tmp.file("sweep.ini"), R"ini(
[sweep]
sigmas = 0, 0.1
scenarios = empty, pillars(5)
seeds = 1, 2, 3
[simulation]
max_ticks = 40
[scenario]
width = 10
height = 10
)ini");
    const SweepSpecFile spec = load_sweep_spec(tmp.file("sweep.ini"));
    CHECK(spec.sigmas.size() == 2);
    CHECK(spec.scenarios.size() == 2);
    CHECK(spec.seeds.size() == 3);
    CHECK(spec.base.max_ticks == 40);

    write_file(tmp.file("too_big.ini"), R"(
[sweep]
sigmas = 0, 0.1
seeds = 1, 2, 3
cap = 3
)");
    CHECK_THROWS_AS(load_sweep_spec(tmp.file("too_big.ini")), ConfigError);
}

TEST_CASE("fault plan parsing") {
    TempDir tmp;
    write_file(tmp.file("faults.txt"), R"(# one per line
tick=100 action=fail node=3
tick=150 action=exit node=7
)");
    const auto events = load_fault_plan(tmp.file("faults.txt"));
    REQUIRE(events.size() == 2);
    CHECK(events[0].tick == 100);
    CHECK(events[0].action == FaultEvent::Action::Fail);
    CHECK(events[0].node_id == 3);
    CHECK(events[1].action == FaultEvent::Action::Exit);

    write_file(tmp.file("bad.txt"), "tick=5 action=explode node=1\n");
    CHECK_THROWS_AS(load_fault_plan(tmp.file("bad.txt")), ConfigError);
    write_file(tmp.file("bad2.txt"), "tick=5 node=1\n");
    CHECK_THROWS_AS(load_fault_plan(tmp.file("bad2.txt")), ConfigError);
}

TEST_CASE("metrics csv round-trips byte-identically through parse and re-write") {
    TempDir tmp;
    SimulationConfig cfg;
    cfg.seed = 3;
    cfg.max_ticks = 40;
    cfg.finalize();
    const EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 3);
    const SimulationResult res = run(cfg, env);

    const std::string first = tmp.file("metrics.csv");
    write_metrics_csv(first, res.series);
    const auto parsed = parse_metrics_csv(first);
    REQUIRE(parsed.size() == res.series.size());
    const std::string second = tmp.file("metrics2.csv");
    write_metrics_csv(second, parsed);
    CHECK(read_file(first) == read_file(second));

    // trajectory round-trip, same shape
    const std::string traj1 = tmp.file("t1.csv");
    write_trajectory_csv(traj1, res.trajectory);
    const auto rows = parse_trajectory_csv(traj1);
    REQUIRE(rows.size() == res.trajectory.size());
    const std::string traj2 = tmp.file("t2.csv");
    write_trajectory_csv(traj2, rows);
    CHECK(read_file(traj1) == read_file(traj2));
}

TEST_CASE("cmd_run writes the artifact set and reports exit codes") {
    TempDir tmp;
    RunManifest manifest;
    manifest.config.seed = 9;
    manifest.config.max_ticks = 600;
    manifest.scenario = parse_scenario("empty");
    manifest.output_dir = tmp.file("out");
    manifest.snapshots_at = {5};

    CHECK(cmd_run(manifest) == 0);
    CHECK(fs::exists(tmp.file("out/metrics.csv")));
    CHECK(fs::exists(tmp.file("out/trajectory.csv")));
    CHECK(fs::exists(tmp.file("out/final_state.json")));
    CHECK(fs::exists(tmp.file("out/cells_5.json")));

    const auto series = parse_metrics_csv(tmp.file("out/metrics.csv"));
    CHECK(series.back().pac >= 0.98);

    // determinism: the same manifest produces byte-identical metrics
    RunManifest again = manifest;
    again.output_dir = tmp.file("out2");
    CHECK(cmd_run(again) == 0);
    CHECK(read_file(tmp.file("out/metrics.csv")) == read_file(tmp.file("out2/metrics.csv")));

    // tick-limit runs exit with 2
    RunManifest limited = manifest;
    limited.config.max_ticks = 1;
    limited.snapshots_at = {1};
    limited.output_dir = tmp.file("out3");
    CHECK(cmd_run(limited) == 2);

    // invalid config exits with 1
    RunManifest broken = manifest;
    broken.config.r_s = -1;
    broken.output_dir = tmp.file("out4");
    CHECK(cmd_run(broken) == 1);
}

TEST_CASE("BISON_SEED overrides the configured seed") {
    SimulationConfig cfg;
    cfg.seed = 5;
    setenv("BISON_SEED", "77", 1);
    apply_seed_override(cfg);
    unsetenv("BISON_SEED");
    CHECK(cfg.seed == 77);

    setenv("BISON_SEED", "not_a_number", 1);
    CHECK_THROWS_AS(apply_seed_override(cfg), ConfigError);
    unsetenv("BISON_SEED");
}

TEST_CASE("degenerate sweep equals the corresponding single run") {
    TempDir tmp;
    SweepSpec sweep;
    sweep.spec.sigmas = {0.0};
    sweep.spec.seeds = {4};
    sweep.spec.scenarios = {parse_scenario("empty")};
    sweep.spec.base.max_ticks = 500;
    sweep.output_dir = tmp.file("sweep");
    sweep.jobs = 1;
    CHECK(cmd_sweep(sweep) == 0);

    RunManifest manifest;
    manifest.config.seed = 4;
    manifest.config.max_ticks = 500;
    manifest.scenario = parse_scenario("empty");
    manifest.output_dir = tmp.file("single");
    CHECK(cmd_run(manifest) == 0);
    const auto series = parse_metrics_csv(tmp.file("single/metrics.csv"));

    const std::string summary = read_file(tmp.file("sweep/summary.csv"));
    std::istringstream ss(summary);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    CHECK(row.find(format_double(series.back().pac)) != std::string::npos);
    CHECK(row.find("coverage_stall") != std::string::npos);
}

TEST_CASE("sweep parallelism does not change output bytes") {
    TempDir tmp;
    SweepSpec sweep;
    sweep.spec.sigmas = {0.0, 0.05};
    sweep.spec.seeds = {1, 2};
    sweep.spec.scenarios = {parse_scenario("empty")};
    sweep.spec.base.max_ticks = 60;
    sweep.output_dir = tmp.file("serial");
    sweep.jobs = 1;
    CHECK(cmd_sweep(sweep) == 0);

    SweepSpec parallel = sweep;
    parallel.output_dir = tmp.file("parallel");
    parallel.jobs = 4;
    CHECK(cmd_sweep(parallel) == 0);
    CHECK(read_file(tmp.file("serial/summary.csv")) == read_file(tmp.file("parallel/summary.csv")));
}

TEST_CASE("cmd_faults reports recovery and writes exit paths") {
    TempDir tmp;
    write_file(tmp.file("plan.txt"), "tick=320 action=fail node=2\ntick=340 action=exit node=5\n");
    RunManifest manifest;
    manifest.config.seed = 2;
    manifest.config.max_ticks = 1500;
    manifest.scenario = parse_scenario("empty");
    manifest.fault_plan_path = tmp.file("plan.txt");
    manifest.output_dir = tmp.file("out");
    CHECK(cmd_faults(manifest) == 0);
    CHECK(fs::exists(tmp.file("out/recovery_report.json")));
    CHECK(fs::exists(tmp.file("out/exit_path_5.json")));
    const std::string report = read_file(tmp.file("out/recovery_report.json"));
    CHECK(report.find("ticks_to_recover") != std::string::npos);

    // unknown node id in the plan fails the run with exit 1
    write_file(tmp.file("bad_plan.txt"), "tick=10 action=fail node=999\n");
    RunManifest bad = manifest;
    bad.fault_plan_path = tmp.file("bad_plan.txt");
    bad.output_dir = tmp.file("out_bad");
    CHECK(cmd_faults(bad) == 1);
}
