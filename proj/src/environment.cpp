#include "bison/environment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bison/errors.hpp"

namespace bison {

namespace {

constexpr double kWallThickness = 0.4;

double rect_gap(const Obstacle& a, const Obstacle& b) {
    const double dx = std::max({0.0, a.min_corner.x - b.max_corner.x, b.min_corner.x - a.max_corner.x});
    const double dy = std::max({0.0, a.min_corner.y - b.max_corner.y, b.min_corner.y - a.max_corner.y});
    return std::hypot(dx, dy);
}

void validate(const EnvironmentSpec& env) {
    if (env.width <= 0.0 || env.height <= 0.0) throw ScenarioError("environment dims must be positive");
    for (const Obstacle& o : env.obstacles) {
        if (!(o.min_corner.x < o.max_corner.x && o.min_corner.y < o.max_corner.y)) {
            throw ScenarioError("obstacle with inverted corners");
        }
        if (o.min_corner.x < -kGeomEps || o.min_corner.y < -kGeomEps ||
            o.max_corner.x > env.width + kGeomEps || o.max_corner.y > env.height + kGeomEps) {
            throw ScenarioError("obstacle outside environment bounds in scenario " + env.scenario_tag);
        }
    }
    for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
        for (std::size_t j = i + 1; j < env.obstacles.size(); ++j) {
            const Obstacle& a = env.obstacles[i];
            const Obstacle& b = env.obstacles[j];
            const bool overlap_x = a.min_corner.x < b.max_corner.x - kGeomEps &&
                                   b.min_corner.x < a.max_corner.x - kGeomEps;
            const bool overlap_y = a.min_corner.y < b.max_corner.y - kGeomEps &&
                                   b.min_corner.y < a.max_corner.y - kGeomEps;
            if (overlap_x && overlap_y) throw ScenarioError("overlapping obstacles");
        }
    }
    if (env.free_area() <= 0.0) throw ScenarioError("no free area left");
}

std::vector<Obstacle> place_pillars(int n, double width, double height, std::uint64_t seed) {
    if (n < 1 || n > 50) throw ScenarioError("pillar count must be in [1, 50]");
    std::mt19937_64 gen(seed);
    // Unit squares, >= 1 m from the walls and from each other.
    if (width < 3.0 || height < 3.0) throw ScenarioError("environment too small for pillars");
    std::uniform_real_distribution<double> ux(1.0, width - 2.0);
    std::uniform_real_distribution<double> uy(1.0, height - 2.0);

    std::vector<Obstacle> placed;
    placed.reserve(static_cast<std::size_t>(n));
    int attempts = 0;
    int stuck = 0;
    while (static_cast<int>(placed.size()) < n) {
        if (++attempts > 100000) throw ScenarioError("pillar rejection sampling failed");
        const Point2 c{ux(gen), uy(gen)};
        const Obstacle candidate{c, {c.x + 1.0, c.y + 1.0}};
        const bool clear = std::all_of(placed.begin(), placed.end(), [&](const Obstacle& o) {
            return rect_gap(candidate, o) >= 1.0;
        });
        if (clear) {
            placed.push_back(candidate);
            stuck = 0;
        } else if (++stuck >= 1000) {
            // a dense partial placement can wedge; restart the configuration
            placed.clear();
            stuck = 0;
        }
    }
    return placed;
}

std::vector<Obstacle> wall_layout(WallShape shape, double w, double h) {
    const double t = kWallThickness;
    std::vector<Obstacle> obs;
    switch (shape) {
        case WallShape::H:
            obs.push_back({{w / 3 - t / 2, 0.2 * h}, {w / 3 + t / 2, 0.8 * h}});
            obs.push_back({{2 * w / 3 - t / 2, 0.2 * h}, {2 * w / 3 + t / 2, 0.8 * h}});
            obs.push_back({{w / 3 + t / 2, h / 2 - t / 2}, {2 * w / 3 - t / 2, h / 2 + t / 2}});
            break;
        case WallShape::Pi:
            obs.push_back({{w / 3 - t / 2, 0.2 * h}, {w / 3 + t / 2, 0.8 * h}});
            obs.push_back({{2 * w / 3 - t / 2, 0.2 * h}, {2 * w / 3 + t / 2, 0.8 * h}});
            obs.push_back({{w / 3 - t / 2, 0.8 * h}, {2 * w / 3 + t / 2, 0.8 * h + t}});
            break;
        case WallShape::C:
            obs.push_back({{w / 3 - t / 2, 0.2 * h}, {w / 3 + t / 2, 0.8 * h}});
            obs.push_back({{w / 3 + t / 2, 0.8 * h - t}, {2 * w / 3, 0.8 * h}});
            obs.push_back({{w / 3 + t / 2, 0.2 * h}, {2 * w / 3, 0.2 * h + t}});
            break;
        case WallShape::ThreeRooms:
            obs.push_back({{0.0, h / 3 - t / 2}, {0.75 * w, h / 3 + t / 2}});
            obs.push_back({{0.0, 2 * h / 3 - t / 2}, {0.75 * w, 2 * h / 3 + t / 2}});
            break;
    }
    return obs;
}

std::vector<Obstacle> crevice_layout(double gap, double w, double h) {
    if (gap < 0.25 || gap > 5.0) throw ScenarioError("crevice gap must be in [0.25, 5.0]");
    // Four slabs of 0.6W x 1.0 m stacked upward from y = 0.3H.
    std::vector<Obstacle> obs;
    const double x0 = 0.2 * w;
    const double x1 = 0.8 * w;
    for (int i = 0; i < 4; ++i) {
        const double y0 = 0.3 * h + i * (1.0 + gap);
        obs.push_back({{x0, y0}, {x1, y0 + 1.0}});
    }
    if (obs.back().max_corner.y > h + kGeomEps) {
        throw ScenarioError("crevice stack does not fit the environment height");
    }
    return obs;
}

}  // namespace

double Obstacle::distance_to(Point2 p) const {
    const double dx = std::max({0.0, min_corner.x - p.x, p.x - max_corner.x});
    const double dy = std::max({0.0, min_corner.y - p.y, p.y - max_corner.y});
    return std::hypot(dx, dy);
}

std::string Scenario::tag() const {
    std::ostringstream os;
    switch (type) {
        case Type::Empty: os << "empty"; break;
        case Type::Pillars: os << "pillars(" << pillar_count << ")"; break;
        case Type::Walls:
            os << "walls(";
            switch (wall_shape) {
                case WallShape::H: os << "H"; break;
                case WallShape::Pi: os << "Pi"; break;
                case WallShape::C: os << "C"; break;
                case WallShape::ThreeRooms: os << "ThreeRooms"; break;
            }
            os << ")";
            break;
        case Type::Crevices: os << "crevices(" << crevice_gap << ")"; break;
    }
    return os.str();
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    auto param_of = [&text](std::size_t at) {
        const std::size_t open = text.find_first_of("(:", at);
        if (open == std::string::npos) return std::string();
        std::size_t end = text.find(')', open + 1);
        if (end == std::string::npos) end = text.size();
        return text.substr(open + 1, end - open - 1);
    };
    if (text.rfind("empty", 0) == 0) {
        s.type = Scenario::Type::Empty;
    } else if (text.rfind("pillars", 0) == 0) {
        s.type = Scenario::Type::Pillars;
        const std::string p = param_of(0);
        if (p.empty()) throw ConfigError("scenario pillars needs a count, e.g. pillars(10)");
        s.pillar_count = std::stoi(p);
    } else if (text.rfind("walls", 0) == 0) {
        s.type = Scenario::Type::Walls;
        const std::string p = param_of(0);
        if (p == "H") s.wall_shape = WallShape::H;
        else if (p == "Pi") s.wall_shape = WallShape::Pi;
        else if (p == "C") s.wall_shape = WallShape::C;
        else if (p == "ThreeRooms") s.wall_shape = WallShape::ThreeRooms;
        else throw ConfigError("scenario walls shape must be H, Pi, C or ThreeRooms");
    } else if (text.rfind("crevices", 0) == 0) {
        s.type = Scenario::Type::Crevices;
        const std::string p = param_of(0);
        if (p.empty()) throw ConfigError("scenario crevices needs a gap, e.g. crevices(0.5)");
        s.crevice_gap = std::stod(p);
    } else {
        throw ConfigError("unknown scenario kind: " + text);
    }
    return s;
}

double EnvironmentSpec::free_area() const {
    double area = width * height;
    for (const Obstacle& o : obstacles) area -= o.area();
    return area;
}

bool EnvironmentSpec::point_in_free_space(Point2 p) const {
    if (!in_bounds(p)) return false;
    for (const Obstacle& o : obstacles) {
        if (o.contains(p)) return false;
    }
    return true;
}

std::vector<HalfPlane> EnvironmentSpec::obstacle_edges_within(Point2 center, double radius) const {
    if (radius <= 0.0) throw SimError("obstacle query radius must be positive");
    for (const Obstacle& o : obstacles) {
        if (o.contains(center)) throw SimError("query position inside an obstacle");
    }
    std::vector<HalfPlane> planes;
    for (const Obstacle& o : obstacles) {
        if (o.distance_to(center) > radius) continue;
        if (center.x < o.min_corner.x) planes.push_back({{o.min_corner.x, 0.0}, {-1.0, 0.0}});
        if (center.x > o.max_corner.x) planes.push_back({{o.max_corner.x, 0.0}, {1.0, 0.0}});
        if (center.y < o.min_corner.y) planes.push_back({{0.0, o.min_corner.y}, {0.0, -1.0}});
        if (center.y > o.max_corner.y) planes.push_back({{0.0, o.max_corner.y}, {0.0, 1.0}});
    }
    return planes;
}

std::vector<HalfPlane> EnvironmentSpec::boundary_edges_within(Point2 center, double radius) const {
    std::vector<HalfPlane> planes;
    if (center.x - radius <= 0.0) planes.push_back({{0.0, 0.0}, {1.0, 0.0}});
    if (center.x + radius >= width) planes.push_back({{width, 0.0}, {-1.0, 0.0}});
    if (center.y - radius <= 0.0) planes.push_back({{0.0, 0.0}, {0.0, 1.0}});
    if (center.y + radius >= height) planes.push_back({{0.0, height}, {0.0, -1.0}});
    return planes;
}

std::vector<Obstacle> EnvironmentSpec::obstacles_within(Point2 center, double radius) const {
    std::vector<Obstacle> near;
    for (const Obstacle& o : obstacles) {
        if (o.distance_to(center) <= radius) near.push_back(o);
    }
    return near;
}

Point2 EnvironmentSpec::project_to_free_space(Point2 p, double clearance) const {
    Point2 q{std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
    for (int iter = 0; iter < 8; ++iter) {
        const Obstacle* hit = nullptr;
        for (const Obstacle& o : obstacles) {
            if (o.contains(q)) {
                hit = &o;
                break;
            }
        }
        if (hit == nullptr) return q;

        struct Candidate {
            Point2 pos;
            double push;
        };
        Candidate cands[4] = {
            {{hit->min_corner.x - clearance, q.y}, q.x - hit->min_corner.x + clearance},
            {{hit->max_corner.x + clearance, q.y}, hit->max_corner.x - q.x + clearance},
            {{q.x, hit->min_corner.y - clearance}, q.y - hit->min_corner.y + clearance},
            {{q.x, hit->max_corner.y + clearance}, hit->max_corner.y - q.y + clearance},
        };
        std::sort(std::begin(cands), std::end(cands),
                  [](const Candidate& a, const Candidate& b) { return a.push < b.push; });
        bool moved = false;
        for (const Candidate& c : cands) {
            const Point2 clamped{std::clamp(c.pos.x, 0.0, width), std::clamp(c.pos.y, 0.0, height)};
            if (point_in_free_space(clamped)) {
                q = clamped;
                moved = true;
                break;
            }
        }
        if (!moved) q = Point2{std::clamp(cands[0].pos.x, 0.0, width), std::clamp(cands[0].pos.y, 0.0, height)};
    }
    if (!point_in_free_space(q)) throw SimError("free-space projection failed");
    return q;
}

EnvironmentSpec build_scenario(const Scenario& kind, double width, double height,
                               std::uint64_t seed) {
    EnvironmentSpec env;
    env.width = width;
    env.height = height;
    env.scenario_tag = kind.tag();
    switch (kind.type) {
        case Scenario::Type::Empty:
            break;
        case Scenario::Type::Pillars:
            env.obstacles = place_pillars(kind.pillar_count, width, height, seed);
            break;
        case Scenario::Type::Walls:
            env.obstacles = wall_layout(kind.wall_shape, width, height);
            break;
        case Scenario::Type::Crevices:
            env.obstacles = crevice_layout(kind.crevice_gap, width, height);
            break;
    }
    validate(env);
    return env;
}

}  // namespace bison
