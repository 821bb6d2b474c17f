#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bison/environment.hpp"
#include "bison/geometry.hpp"
#include "bison/metrics.hpp"
#include "bison/rng.hpp"
#include "bison/voronoi.hpp"

namespace bison {

enum class NodeState { Active, Failed, Exiting };

std::string node_state_name(NodeState s);
NodeState node_state_from_name(const std::string& name);

struct Node {
    int id = -1;  // injection order
    Point2 position;
    NodeState state = NodeState::Active;
    double last_shift = 0.0;
    double cumulative_distance = 0.0;
    double cumulative_energy = 0.0;  // mass-normalized, m^2/s^2
    int injected_at = 0;
};

struct SimulationConfig {
    double r_s = 1.0;
    double r_c = 0.0;                 // <= 0: sqrt(3) * r_s
    double sigma = 0.0;
    double tau = 0.0;                 // <= 0: r_s / 100
    int c_max = 15;
    double min_pac = 0.90;
    int max_ticks = 5000;
    double dt = 1.0;
    Point2 injection_point{0.0, 0.0};
    double injection_offset = 0.01;
    std::uint64_t seed = 1;
    double pac_grid_resolution = 0.0;  // <= 0: r_s / 20
    double r_avoid = 0.0;              // <= 0: 0.3 * r_s (exit paths)

    /// Fills derived defaults, then checks invariants (ConfigError names the
    /// offending field).
    void finalize();
};

enum class Termination { Continue, Converged, CoverageStall, TickLimit };

std::string termination_name(Termination t);

struct SimulationState {
    int tick = 0;
    std::vector<Node> nodes;  // every node ever injected, in id order
    int injected_count = 0;
    std::vector<double> pac_history;
    double best_pac = 0.0;  // watermark; starts at min_pac
    int no_improve_count = 0;
    double total_shift = 0.0;  // sum of active-node shifts last tick
    bool has_stepped = false;
    bool connected = false;  // full-graph connectivity of active nodes last tick
    double cdt = 0.0;
};

struct FaultEvent {
    enum class Action { Fail, Exit };
    int tick = 0;
    Action action = Action::Fail;
    int node_id = -1;
};

struct StepResult {
    MetricsRecord record;
    // cell parts per node id, filled only when requested
    std::vector<std::pair<int, std::vector<Polygon>>> cells;
};

/// One simulation run; ticks are strictly sequential. Within a tick the
/// active nodes relax one at a time in injection order, each against the
/// live positions of the others (in-place sweep).
class Simulation {
public:
    Simulation(SimulationConfig config, EnvironmentSpec env);

    const SimulationConfig& config() const { return config_; }
    const EnvironmentSpec& environment() const { return env_; }
    const SimulationState& state() const { return state_; }
    SimulationState& mutable_state() { return state_; }
    const CoverageGrid& grid() const { return grid_; }

    /// True iff some active node just lost its last link (c1) or no active
    /// node covers the injection point (c2). c1 is edge-triggered: one
    /// injection responds to each detected disconnection event rather than
    /// re-firing every tick a node stays stranded.
    bool should_inject() const;

    /// Spawns one node near the injection point at a random entry angle in
    /// [0, 90] degrees. Throws SimError after 32 occluded attempts.
    const Node& inject_node();

    /// One full tick: conditional injection, synchronous relaxation of every
    /// active node toward its restricted-cell centroid, then metrics.
    StepResult step(bool collect_cells = false);

    Termination check_termination() const;

    void fail_node(int id);

    /// Marks the node as exiting (it stops moving, sensing and being sensed)
    /// and returns its collision-avoiding polyline to the injection point.
    std::vector<Point2> start_exit(int id);

    /// Exit path for an active node without changing its state.
    std::vector<Point2> plan_exit(int id, double r_avoid) const;

    /// Restarts the coverage-stall bookkeeping (used when the network changes
    /// through an external fault so that recovery is observable).
    void reset_stall_tracking();

    std::vector<std::pair<int, Point2>> active_snapshot() const;

private:
    SimulationConfig config_;
    EnvironmentSpec env_;
    Rng rng_;
    CoverageGrid grid_;
    SimulationState state_;
    std::vector<int> isolation_streak_;  // consecutive isolated ticks, by node id

    Point2 spawn_position(double theta_rad) const;
    void update_isolation_streaks();
    friend Point2 injection_spawn_position(const SimulationConfig&, double);
};

/// Pure helper: entry-angle to spawn-position mapping.
Point2 injection_spawn_position(const SimulationConfig& config, double theta_rad);

/// Full-graph reachability with edge rule distance <= r_c.
bool network_connected(std::span<const std::pair<int, Point2>> actives, double r_c);

/// c1 predicate: some node has no other node within r_c.
bool any_isolated(std::span<const std::pair<int, Point2>> actives, double r_c);

struct TrajectoryRow {
    int tick = 0;
    int node_id = 0;
    double x = 0.0;
    double y = 0.0;
    double shift = 0.0;
    NodeState state = NodeState::Active;
};

struct SimulationResult {
    SimulationState final_state;
    Termination reason = Termination::Continue;
    std::vector<MetricsRecord> series;
    std::vector<TrajectoryRow> trajectory;
    std::map<int, std::vector<std::pair<int, std::vector<Polygon>>>> cell_snapshots;
    std::vector<std::pair<int, std::vector<Point2>>> exit_paths;
};

/// Runs until termination, applying fault-plan events at their ticks. With a
/// fault plan, termination is not considered until every event has fired.
SimulationResult run(const SimulationConfig& config, const EnvironmentSpec& env,
                     std::span<const FaultEvent> fault_plan = {},
                     std::span<const int> snapshots_at = {});

}  // namespace bison
