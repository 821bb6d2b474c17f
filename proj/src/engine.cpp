#include "bison/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bison/errors.hpp"
#include "bison/perception.hpp"

namespace bison {

namespace {

constexpr double kCentroidClearance = 0.01;  // free-space projection margin
constexpr double kArcStep = 4.0 * std::numbers::pi / 180.0;  // exit-path arc sampling

std::vector<Point2> active_positions(const SimulationState& state) {
    std::vector<Point2> out;
    for (const Node& n : state.nodes) {
        if (n.state == NodeState::Active) out.push_back(n.position);
    }
    return out;
}

}  // namespace

std::string node_state_name(NodeState s) {
    switch (s) {
        case NodeState::Active: return "active";
        case NodeState::Failed: return "failed";
        case NodeState::Exiting: return "exiting";
    }
    return "unknown";
}

NodeState node_state_from_name(const std::string& name) {
    if (name == "active") return NodeState::Active;
    if (name == "failed") return NodeState::Failed;
    if (name == "exiting") return NodeState::Exiting;
    throw ConfigError("unknown node state: " + name);
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::Continue: return "continue";
        case Termination::Converged: return "converged";
        case Termination::CoverageStall: return "coverage_stall";
        case Termination::TickLimit: return "tick_limit";
    }
    return "unknown";
}

void SimulationConfig::finalize() {
    if (r_s <= 0.0) throw ConfigError("r_s must be positive");
    if (r_c <= 0.0) r_c = std::sqrt(3.0) * r_s;
    if (tau <= 0.0) tau = r_s / 100.0;
    if (pac_grid_resolution <= 0.0) pac_grid_resolution = r_s / 20.0;
    if (r_avoid <= 0.0) r_avoid = 0.3 * r_s;

    if (r_c < r_s) throw ConfigError("r_c must be >= r_s");
    if (sigma < 0.0) throw ConfigError("sigma must be non-negative");
    if (min_pac <= 0.0 || min_pac > 1.0) throw ConfigError("min_pac must be in (0, 1]");
    if (c_max < 1) throw ConfigError("c_max must be >= 1");
    if (max_ticks < 1) throw ConfigError("max_ticks must be >= 1");
    if (dt <= 0.0) throw ConfigError("dt must be positive");
    if (injection_offset <= 0.0) throw ConfigError("injection_offset must be positive");
    if (pac_grid_resolution > r_s / 10.0 + kGeomEps) {
        throw ConfigError("pac_grid_resolution must be <= r_s / 10");
    }
    if (r_avoid >= r_s) throw ConfigError("r_avoid must be < r_s");
}

Point2 injection_spawn_position(const SimulationConfig& config, double theta_rad) {
    return config.injection_point +
           config.injection_offset * Point2{std::cos(theta_rad), std::sin(theta_rad)};
}

bool network_connected(std::span<const std::pair<int, Point2>> actives, double r_c) {
    const std::size_t n = actives.size();
    if (n <= 1) return true;
    const double r2 = r_c * r_c;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> frontier{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t cur = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            if (squared_distance(actives[cur].second, actives[i].second) <= r2) {
                seen[i] = true;
                ++reached;
                frontier.push_back(i);
            }
        }
    }
    return reached == n;
}

bool any_isolated(std::span<const std::pair<int, Point2>> actives, double r_c) {
    const double r2 = r_c * r_c;
    for (std::size_t i = 0; i < actives.size(); ++i) {
        bool has_neighbor = false;
        for (std::size_t j = 0; j < actives.size(); ++j) {
            if (i == j) continue;
            if (squared_distance(actives[i].second, actives[j].second) <= r2) {
                has_neighbor = true;
                break;
            }
        }
        if (!has_neighbor) return true;
    }
    return false;
}

Simulation::Simulation(SimulationConfig config, EnvironmentSpec env)
    : config_(std::move(config)),
      env_(std::move(env)),
      rng_(config_.seed),
      grid_(CoverageGrid::build(env_, config_.pac_grid_resolution)) {
    if (!env_.point_in_free_space(config_.injection_point)) {
        throw ConfigError("injection_point must lie in free space");
    }
    state_.best_pac = config_.min_pac;
}

std::vector<std::pair<int, Point2>> Simulation::active_snapshot() const {
    std::vector<std::pair<int, Point2>> snap;
    snap.reserve(state_.nodes.size());
    for (const Node& n : state_.nodes) {
        if (n.state == NodeState::Active) snap.emplace_back(n.id, n.position);
    }
    return snap;
}

bool Simulation::should_inject() const {
    const auto actives = active_snapshot();
    if (actives.empty()) return true;  // c2 holds vacuously
    for (const auto& [id, pos] : actives) {
        const auto idx = static_cast<std::size_t>(id);
        if (idx < isolation_streak_.size() && isolation_streak_[idx] == 1) {
            return true;  // c1: fresh disconnection event
        }
    }
    const double r2 = config_.r_s * config_.r_s;
    for (const auto& [id, pos] : actives) {
        if (squared_distance(pos, config_.injection_point) <= r2) return false;
    }
    return true;  // c2: nobody covers the entry point
}

void Simulation::update_isolation_streaks() {
    isolation_streak_.resize(state_.nodes.size(), 0);
    const auto actives = active_snapshot();
    const double r2 = config_.r_c * config_.r_c;
    for (const auto& [id, pos] : actives) {
        bool has_neighbor = false;
        for (const auto& [jd, q] : actives) {
            if (jd != id && squared_distance(pos, q) <= r2) {
                has_neighbor = true;
                break;
            }
        }
        auto& streak = isolation_streak_[static_cast<std::size_t>(id)];
        streak = has_neighbor ? 0 : streak + 1;
    }
    for (const Node& n : state_.nodes) {
        if (n.state != NodeState::Active) isolation_streak_[static_cast<std::size_t>(n.id)] = 0;
    }
}

Point2 Simulation::spawn_position(double theta_rad) const {
    return injection_spawn_position(config_, theta_rad);
}

const Node& Simulation::inject_node() {
    for (int attempt = 0; attempt < 32; ++attempt) {
        const double theta = rng_.uniform(0.0, std::numbers::pi / 2.0);
        const Point2 pos = spawn_position(theta);
        if (!env_.point_in_free_space(pos)) continue;
        Node node;
        node.id = state_.injected_count;
        node.position = pos;
        node.state = NodeState::Active;
        node.injected_at = state_.tick;
        state_.nodes.push_back(node);
        state_.injected_count += 1;
        return state_.nodes.back();
    }
    throw SimError("injection blocked: no free spawn position near the entry point");
}

StepResult Simulation::step(bool collect_cells) {
    int injected_this_tick = -1;
    if (should_inject()) injected_this_tick = inject_node().id;

    StepResult result;
    std::vector<double> shifts;           // physical displacements, all active nodes
    std::vector<double> traveled;         // CDT view: nodes that existed last tick
    std::vector<double> cell_areas;
    double total_shift = 0.0;

    const NoiseModel noise{config_.sigma, 0.0};
    std::vector<std::pair<int, Point2>> others;
    // In-place relaxation sweep in injection order: each node reacts to the
    // positions its neighbors already hold this tick.
    for (Node& node : state_.nodes) {
        if (node.state != NodeState::Active) {
            node.last_shift = 0.0;
            continue;
        }
        others.clear();
        for (const Node& other : state_.nodes) {
            if (other.id != node.id && other.state == NodeState::Active) {
                others.emplace_back(other.id, other.position);
            }
        }
        const auto perceived =
            perceive_neighbors(node.position, others, config_.r_c, noise, rng_);
        const auto walls = env_.boundary_edges_within(node.position, config_.r_s);
        const auto near_obstacles = env_.obstacles_within(node.position, config_.r_s);

        const auto cell = restricted_cell(node.id, node.position, perceived, walls,
                                          near_obstacles, config_.r_s);
        double shift = 0.0;
        if (cell) {
            const Point2 target =
                env_.project_to_free_space(target_centroid(*cell), kCentroidClearance);
            shift = distance(node.position, target);
            node.position = target;
            cell_areas.push_back(cell->area);
            if (collect_cells) result.cells.emplace_back(node.id, cell->parts);
        }
        // an annihilated cell (possible under extreme noise) holds the node
        node.last_shift = shift;
        node.cumulative_distance += shift;
        node.cumulative_energy += kinetic_energy_increment(shift, config_.dt);
        shifts.push_back(shift);
        // d(pos_{t-1}, pos_t) is undefined for a node injected this tick; it
        // enters the distance-traveled accounting from its next tick.
        if (node.id != injected_this_tick) traveled.push_back(shift);
        total_shift += shift;
    }

    state_.tick += 1;
    state_.total_shift = total_shift;
    state_.has_stepped = true;
    update_isolation_streaks();

    const auto positions = active_positions(state_);
    const double coverage = pac(positions, grid_, config_.r_s);
    state_.pac_history.push_back(coverage);
    state_.no_improve_count += 1;
    if (coverage >= state_.best_pac) {
        state_.no_improve_count = 0;
        state_.best_pac = coverage;
    }
    if (!shifts.empty()) {
        state_.cdt = cdt_update(state_.cdt, traveled, static_cast<int>(shifts.size()));
    }
    state_.connected = network_connected(active_snapshot(), config_.r_c);

    MetricsRecord& rec = result.record;
    rec.tick = state_.tick;
    rec.pac = coverage;
    rec.adt = adt(positions, config_.injection_point);
    rec.cdt = state_.cdt;
    if (!cell_areas.empty()) rec.u_a = uniformity(cell_areas);
    if (!shifts.empty()) {
        rec.mean_velocity = total_shift / static_cast<double>(shifts.size()) / config_.dt;
    }
    rec.active_nodes = static_cast<int>(positions.size());
    rec.injected_count = state_.injected_count;
    rec.per_node_energy.reserve(state_.nodes.size());
    for (const Node& n : state_.nodes) rec.per_node_energy.push_back(n.cumulative_energy);
    return result;
}

Termination Simulation::check_termination() const {
    if (!state_.has_stepped) return Termination::Continue;
    if (state_.total_shift < config_.tau) return Termination::Converged;
    if (!state_.pac_history.empty() && state_.pac_history.back() >= config_.min_pac &&
        state_.no_improve_count >= config_.c_max && state_.connected) {
        return Termination::CoverageStall;
    }
    if (state_.tick >= config_.max_ticks) return Termination::TickLimit;
    return Termination::Continue;
}

void Simulation::fail_node(int id) {
    for (Node& n : state_.nodes) {
        if (n.id == id) {
            if (n.state != NodeState::Active) throw SimError("fail_node: node is not active");
            n.state = NodeState::Failed;
            n.last_shift = 0.0;
            return;
        }
    }
    throw SimError("fail_node: unknown node id");
}

void Simulation::reset_stall_tracking() {
    state_.best_pac = config_.min_pac;
    state_.no_improve_count = 0;
}

std::vector<Point2> Simulation::start_exit(int id) {
    auto path = plan_exit(id, config_.r_avoid);
    for (Node& n : state_.nodes) {
        if (n.id == id) {
            n.state = NodeState::Exiting;
            n.last_shift = 0.0;
            break;
        }
    }
    return path;
}

namespace {

struct Crossing {
    std::size_t segment;
    double t;        // parameter within the segment
    double along;    // arc length from the path start
    Point2 point;
};

// All intersections of the polyline with the circle (center, radius), in
// path order.
std::vector<Crossing> circle_crossings(const std::vector<Point2>& path, Point2 center,
                                       double radius) {
    std::vector<Crossing> crossings;
    double offset = 0.0;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const Point2 p = path[s];
        const Point2 q = path[s + 1];
        const Point2 d = q - p;
        const double a = dot(d, d);
        if (a <= kGeomEps * kGeomEps) continue;
        const Point2 f = p - center;
        const double b = 2.0 * dot(f, d);
        const double c = dot(f, f) - radius * radius;
        const double disc = b * b - 4.0 * a * c;
        if (disc > 0.0) {
            const double sq = std::sqrt(disc);
            for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
                if (t >= -kGeomEps && t <= 1.0 + kGeomEps) {
                    const double tc = std::clamp(t, 0.0, 1.0);
                    crossings.push_back({s, tc, offset + tc * std::sqrt(a), p + tc * d});
                }
            }
        }
        offset += std::sqrt(a);
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.along < b.along; });
    return crossings;
}

std::vector<Point2> arc_points(Point2 center, double radius, double a_from, double a_to,
                               bool ccw) {
    double sweep = ccw ? a_to - a_from : a_from - a_to;
    while (sweep < 0.0) sweep += 2.0 * std::numbers::pi;
    const int steps = std::max(1, static_cast<int>(std::ceil(sweep / kArcStep)));
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(steps) - 1);
    for (int s = 1; s < steps; ++s) {
        const double a = a_from + (ccw ? 1.0 : -1.0) * sweep * s / steps;
        pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return pts;
}

double min_clearance(const std::vector<Point2>& path,
                     const std::vector<Point2>& sites, double sample_step) {
    double best = std::numeric_limits<double>::max();
    auto probe = [&](Point2 p) {
        for (const Point2& s : sites) best = std::min(best, distance(p, s));
    };
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const double len = distance(path[s], path[s + 1]);
        const int n = std::max(1, static_cast<int>(std::ceil(len / sample_step)));
        for (int i = 0; i <= n; ++i) {
            probe(path[s] + (static_cast<double>(i) / n) * (path[s + 1] - path[s]));
        }
    }
    return best;
}

bool path_in_free_space(const std::vector<Point2>& path, const EnvironmentSpec& env,
                        double sample_step) {
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const double len = distance(path[s], path[s + 1]);
        const int n = std::max(1, static_cast<int>(std::ceil(len / sample_step)));
        for (int i = 0; i <= n; ++i) {
            if (!env.point_in_free_space(path[s] + (static_cast<double>(i) / n) *
                                                       (path[s + 1] - path[s]))) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<Point2> Simulation::plan_exit(int id, double r_avoid) const {
    const Node* exiting = nullptr;
    for (const Node& n : state_.nodes) {
        if (n.id == id) exiting = &n;
    }
    if (exiting == nullptr) throw SimError("plan_exit: unknown node id");
    if (exiting->state != NodeState::Active) throw SimError("plan_exit: node is not active");
    if (r_avoid <= 0.0 || r_avoid >= config_.r_s) {
        throw SimError("plan_exit: r_avoid must be in (0, r_s)");
    }

    std::vector<Point2> blockers;
    for (const Node& n : state_.nodes) {
        if (n.id != id && n.state == NodeState::Active) blockers.push_back(n.position);
    }

    const Point2 start = exiting->position;
    const Point2 goal = config_.injection_point;
    if (distance(start, goal) <= kGeomEps) return {start};

    // The detour arcs are sampled as chords; walking them at a slightly
    // inflated radius keeps every chord point at >= r_avoid from the blocker.
    const double r_detour = r_avoid / std::cos(kArcStep / 2.0) * (1.0 + 1e-9);
    for (const Point2& b : blockers) {
        if (distance(start, b) < r_detour || distance(goal, b) < r_detour) {
            throw SimError("plan_exit: endpoint blocked within avoidance radius");
        }
    }

    std::vector<Point2> path{start, goal};
    for (int iter = 0; iter < 64; ++iter) {
        // earliest blocker whose avoidance disk the current path cuts into;
        // the detour itself is built on the slightly larger r_detour circle,
        // whose chords stay outside r_avoid and trigger no re-detour
        const Point2* offender = nullptr;
        double first_along = std::numeric_limits<double>::max();
        for (const Point2& b : blockers) {
            const auto crossings = circle_crossings(path, b, r_avoid * (1.0 - 1e-9));
            if (crossings.size() >= 2 && crossings.front().along < first_along) {
                first_along = crossings.front().along;
                offender = &b;
            }
        }
        if (offender == nullptr) break;

        const auto detour_crossings = circle_crossings(path, *offender, r_detour);
        if (detour_crossings.size() < 2) throw SimError("plan_exit: degenerate detour geometry");
        const Crossing entry = detour_crossings.front();
        const Crossing exit = detour_crossings.back();
        const double a_from = std::atan2(entry.point.y - offender->y, entry.point.x - offender->x);
        const double a_to = std::atan2(exit.point.y - offender->y, exit.point.x - offender->x);

        double ccw_sweep = a_to - a_from;
        while (ccw_sweep < 0.0) ccw_sweep += 2.0 * std::numbers::pi;
        const bool shorter_is_ccw = ccw_sweep <= std::numbers::pi;

        auto rebuild = [&](bool ccw) {
            std::vector<Point2> next(path.begin(), path.begin() + static_cast<long>(entry.segment) + 1);
            next.push_back(entry.point);
            const auto arc = arc_points(*offender, r_detour, a_from, a_to, ccw);
            next.insert(next.end(), arc.begin(), arc.end());
            next.push_back(exit.point);
            next.insert(next.end(), path.begin() + static_cast<long>(exit.segment) + 1, path.end());
            return next;
        };

        std::vector<Point2> candidate = rebuild(shorter_is_ccw);
        if (!path_in_free_space(candidate, env_, 0.01)) {
            candidate = rebuild(!shorter_is_ccw);
            if (!path_in_free_space(candidate, env_, 0.01)) {
                throw SimError("plan_exit: no clearance-respecting detour found");
            }
        }
        path = std::move(candidate);
        if (iter == 63) throw SimError("plan_exit: detour iteration limit reached");
    }

    if (!blockers.empty() && min_clearance(path, blockers, 0.01) < r_avoid - 1e-9) {
        throw SimError("plan_exit: no clearance-respecting detour found");
    }
    if (!path_in_free_space(path, env_, 0.01)) {
        throw SimError("plan_exit: path leaves free space");
    }
    return path;
}

SimulationResult run(const SimulationConfig& config, const EnvironmentSpec& env,
                     std::span<const FaultEvent> fault_plan, std::span<const int> snapshots_at) {
    SimulationConfig cfg = config;
    cfg.finalize();
    Simulation sim(cfg, env);

    std::vector<FaultEvent> events(fault_plan.begin(), fault_plan.end());
    std::stable_sort(events.begin(), events.end(),
                     [](const FaultEvent& a, const FaultEvent& b) { return a.tick < b.tick; });
    std::size_t next_event = 0;

    SimulationResult result;
    while (true) {
        while (next_event < events.size() && events[next_event].tick <= sim.state().tick) {
            const FaultEvent& ev = events[next_event];
            if (ev.action == FaultEvent::Action::Fail) {
                sim.fail_node(ev.node_id);
            } else {
                result.exit_paths.emplace_back(ev.node_id, sim.start_exit(ev.node_id));
            }
            // the network changed: restart stall tracking so recovery runs
            sim.reset_stall_tracking();
            ++next_event;
        }

        const int upcoming_tick = sim.state().tick + 1;
        const bool collect = std::find(snapshots_at.begin(), snapshots_at.end(), upcoming_tick) !=
                             snapshots_at.end();
        StepResult step = sim.step(collect);
        result.series.push_back(std::move(step.record));
        if (collect) result.cell_snapshots[upcoming_tick] = std::move(step.cells);
        for (const Node& n : sim.state().nodes) {
            result.trajectory.push_back({sim.state().tick, n.id, n.position.x, n.position.y,
                                         n.last_shift, n.state});
        }

        const Termination term = sim.check_termination();
        if (term == Termination::TickLimit ||
            (term != Termination::Continue && next_event >= events.size())) {
            result.reason = term;
            break;
        }
    }
    result.final_state = sim.state();
    return result;
}

}  // namespace bison
