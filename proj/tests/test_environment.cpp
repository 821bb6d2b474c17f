#include <doctest.h>

#include <cmath>

#include "bison/environment.hpp"
#include "bison/errors.hpp"
#include "helpers.hpp"

using namespace bison;

namespace {

// Independent free-area oracle: 0.01 m rasterization.
double grid_free_area(const EnvironmentSpec& env, double step = 0.01) {
    std::size_t free_cells = 0;
    const auto nx = static_cast<std::size_t>(std::llround(env.width / step));
    const auto ny = static_cast<std::size_t>(std::llround(env.height / step));
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Point2 p{(i + 0.5) * step, (j + 0.5) * step};
            if (env.point_in_free_space(p)) ++free_cells;
        }
    }
    return static_cast<double>(free_cells) * step * step;
}

}  // namespace

TEST_CASE("build_scenario: empty environment") {
    const EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 1);
    CHECK(env.obstacles.empty());
    CHECK(env.free_area() == doctest::Approx(100.0));
    CHECK(env.scenario_tag == "empty");
}

TEST_CASE("build_scenario: pillars are unit squares with clearance") {
    const EnvironmentSpec env = build_scenario(parse_scenario("pillars(5)"), 10, 10, 1);
    REQUIRE(env.obstacles.size() == 5);
    CHECK(env.free_area() == doctest::Approx(95.0));
    for (const Obstacle& o : env.obstacles) {
        CHECK(o.max_corner.x - o.min_corner.x == doctest::Approx(1.0));
        CHECK(o.max_corner.y - o.min_corner.y == doctest::Approx(1.0));
        CHECK(o.min_corner.x >= 1.0);
        CHECK(o.min_corner.y >= 1.0);
        CHECK(o.max_corner.x <= 9.0);
        CHECK(o.max_corner.y <= 9.0);
    }
    for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
        for (std::size_t j = i + 1; j < env.obstacles.size(); ++j) {
            const Obstacle& a = env.obstacles[i];
            const Obstacle& b = env.obstacles[j];
            const double dx = std::max({0.0, a.min_corner.x - b.max_corner.x,
                                        b.min_corner.x - a.max_corner.x});
            const double dy = std::max({0.0, a.min_corner.y - b.max_corner.y,
                                        b.min_corner.y - a.max_corner.y});
            CHECK(std::hypot(dx, dy) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("build_scenario is bit-deterministic in (kind, seed, dims)") {
    const EnvironmentSpec a = build_scenario(parse_scenario("pillars(10)"), 10, 10, 77);
    const EnvironmentSpec b = build_scenario(parse_scenario("pillars(10)"), 10, 10, 77);
    REQUIRE(a.obstacles.size() == b.obstacles.size());
    for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
        CHECK(a.obstacles[i].min_corner.x == b.obstacles[i].min_corner.x);
        CHECK(a.obstacles[i].min_corner.y == b.obstacles[i].min_corner.y);
    }
    const EnvironmentSpec c = build_scenario(parse_scenario("pillars(10)"), 10, 10, 78);
    bool any_different = false;
    for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
        if (a.obstacles[i].min_corner.x != c.obstacles[i].min_corner.x) any_different = true;
    }
    CHECK(any_different);
}

TEST_CASE("build_scenario: crevices have exactly the requested gap") {
    const EnvironmentSpec env = build_scenario(parse_scenario("crevices(0.5)"), 10, 10, 1);
    REQUIRE(env.obstacles.size() == 4);
    for (std::size_t i = 0; i + 1 < env.obstacles.size(); ++i) {
        const double gap = env.obstacles[i + 1].min_corner.y - env.obstacles[i].max_corner.y;
        CHECK(gap == doctest::Approx(0.5).epsilon(1e-12));
    }
    // slabs are 0.6 W wide and 1 m tall, left edges at 0.2 W
    for (const Obstacle& o : env.obstacles) {
        CHECK(o.min_corner.x == doctest::Approx(2.0));
        CHECK(o.max_corner.x == doctest::Approx(8.0));
        CHECK(o.max_corner.y - o.min_corner.y == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(build_scenario(parse_scenario("crevices(3.0)"), 10, 10, 1), ScenarioError);
}

TEST_CASE("free_area matches the grid rasterization oracle") {
    for (const char* kind : {"empty", "pillars(5)", "walls(H)", "walls(Pi)", "walls(C)",
                             "walls(ThreeRooms)", "crevices(0.5)"}) {
        const EnvironmentSpec env = build_scenario(parse_scenario(kind), 10, 10, 3);
        const double oracle = grid_free_area(env);
        CHECK(std::abs(env.free_area() - oracle) / env.free_area() < 0.005);
    }
}

TEST_CASE("walls(ThreeRooms) blueprint bookkeeping") {
    const EnvironmentSpec env = build_scenario(parse_scenario("walls(ThreeRooms)"), 10, 10, 1);
    REQUIRE(env.obstacles.size() == 2);
    // two 7.5 x 0.4 slabs
    CHECK(env.free_area() == doctest::Approx(100.0 - 2 * 7.5 * 0.4));
}

TEST_CASE("point_in_free_space: bounds and obstacle boundaries") {
    const EnvironmentSpec empty = build_scenario(parse_scenario("empty"), 10, 10, 1);
    CHECK(empty.point_in_free_space({5, 5}));
    CHECK_FALSE(empty.point_in_free_space({-1, 5}));
    CHECK(empty.point_in_free_space({0, 0}));  // the injection corner is legal

    EnvironmentSpec env = empty;
    env.obstacles.push_back({{4, 4}, {5, 5}});
    CHECK_FALSE(env.point_in_free_space({4.5, 4.5}));
    CHECK_FALSE(env.point_in_free_space({4.0, 4.5}));  // boundary counts as blocked
    CHECK(env.point_in_free_space({3.999, 4.5}));
}

TEST_CASE("obstacle_edges_within: visibility rules") {
    EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 1);
    env.obstacles.push_back({{4, 0}, {4.4, 10}});  // wall slab

    SUBCASE("no obstacle within radius") {
        CHECK(env.obstacle_edges_within({1, 5}, 1.0).empty());
    }
    SUBCASE("node left of the wall sees one face") {
        const auto planes = env.obstacle_edges_within({3.5, 5}, 1.0);
        REQUIRE(planes.size() == 1);
        CHECK(planes[0].anchor.x == doctest::Approx(4.0));
        CHECK(planes[0].inward_normal.x == doctest::Approx(-1.0));
        CHECK(planes[0].contains({3.5, 5}));
    }
    SUBCASE("wall out of sensing range yields nothing") {
        CHECK(env.obstacle_edges_within({2.5, 5}, 1.0).empty());
    }
    SUBCASE("center inside an obstacle is illegal") {
        CHECK_THROWS_AS(env.obstacle_edges_within({4.2, 5}, 1.0), SimError);
    }
}

TEST_CASE("obstacle_edges_within: pillar corner yields two faces, clipped area matches grid") {
    EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 1);
    env.obstacles.push_back({{5, 5}, {6, 6}});
    const Point2 node{4.4, 4.4};
    const double r_s = 1.0;
    const auto planes = env.obstacle_edges_within(node, r_s);
    REQUIRE(planes.size() == 2);
    for (const HalfPlane& h : planes) CHECK(h.contains(node));

    Polygon cell = disk_to_polygon({node, r_s}, 64);
    for (const HalfPlane& h : planes) {
        const auto clipped = clip_halfplane(cell, h);
        REQUIRE(clipped.has_value());
        cell = *clipped;
    }
    const double area = polygon_area(cell);

    // grid membership oracle at 0.01 m: inside the disk and inward of both faces
    const auto oracle = test::grid_region_centroid(
        {node.x - r_s, node.y - r_s}, {node.x + r_s, node.y + r_s}, 0.01, [&](Point2 p) {
            if (squared_distance(p, node) > r_s * r_s) return false;
            for (const HalfPlane& h : planes) {
                if (!h.contains(p)) return false;
            }
            return true;
        });
    CHECK(std::abs(area - oracle.area) / oracle.area < 0.01);
}

TEST_CASE("every emitted obstacle half-plane contains the querying node") {
    const EnvironmentSpec env = build_scenario(parse_scenario("pillars(10)"), 10, 10, 5);
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    int checked = 0;
    while (checked < 200) {
        const Point2 p{coord(gen), coord(gen)};
        if (!env.point_in_free_space(p)) continue;
        ++checked;
        for (const HalfPlane& h : env.obstacle_edges_within(p, 2.0)) CHECK(h.contains(p));
    }
}

TEST_CASE("boundary_edges_within reports nearby walls with inward normals") {
    const EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 1);
    CHECK(env.boundary_edges_within({5, 5}, 1.0).empty());
    const auto corner = env.boundary_edges_within({0.5, 0.5}, 1.0);
    CHECK(corner.size() == 2);
    for (const HalfPlane& h : corner) CHECK(h.contains({0.5, 0.5}));
    const auto all = env.boundary_edges_within({5, 5}, 20.0);
    CHECK(all.size() == 4);
}

TEST_CASE("project_to_free_space pushes points out of obstacles with clearance") {
    EnvironmentSpec env = build_scenario(parse_scenario("empty"), 10, 10, 1);
    env.obstacles.push_back({{4, 4}, {5, 5}});

    const Point2 inside{4.2, 4.5};
    const Point2 out = env.project_to_free_space(inside, 0.01);
    CHECK(env.point_in_free_space(out));
    CHECK(out.x == doctest::Approx(3.99));

    const Point2 outside{-2.0, 5.0};
    const Point2 clamped = env.project_to_free_space(outside, 0.01);
    CHECK(clamped.x == doctest::Approx(0.0));
    CHECK(clamped.y == doctest::Approx(5.0));

    const Point2 fine{2.0, 2.0};
    const Point2 same = env.project_to_free_space(fine, 0.01);
    CHECK(distance(fine, same) == doctest::Approx(0.0));
}

TEST_CASE("scenario parsing round-trips through tags") {
    for (const char* kind : {"empty", "pillars(7)", "walls(Pi)", "crevices(1.5)"}) {
        const Scenario s = parse_scenario(kind);
        CHECK(parse_scenario(s.tag()).tag() == s.tag());
    }
    CHECK_THROWS_AS(parse_scenario("bogus"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("walls(X)"), ConfigError);
}
