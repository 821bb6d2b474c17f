#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bison/geometry.hpp"

namespace bison {

/// Axis-aligned rectangular obstacle. The boundary counts as blocked.
struct Obstacle {
    Point2 min_corner;
    Point2 max_corner;

    double area() const {
        return (max_corner.x - min_corner.x) * (max_corner.y - min_corner.y);
    }
    bool contains(Point2 p) const {
        return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y &&
               p.y <= max_corner.y;
    }
    /// Euclidean distance from p to the (closed) rectangle; 0 inside.
    double distance_to(Point2 p) const;
};

enum class WallShape { H, Pi, C, ThreeRooms };

/// Scenario selector mirroring the catalog used throughout the evaluation.
struct Scenario {
    enum class Type { Empty, Pillars, Walls, Crevices };
    Type type = Type::Empty;
    int pillar_count = 0;       // Pillars
    WallShape wall_shape = WallShape::H;  // Walls
    double crevice_gap = 0.5;   // Crevices

    std::string tag() const;
};

Scenario parse_scenario(const std::string& text);

struct EnvironmentSpec {
    double width = 0.0;
    double height = 0.0;
    std::vector<Obstacle> obstacles;
    std::string scenario_tag;

    double free_area() const;
    bool in_bounds(Point2 p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
    bool point_in_free_space(Point2 p) const;

    /// Half-planes of obstacle faces facing `center`, for obstacles whose
    /// rectangle comes within `radius` of it. Throws SimError when the center
    /// itself is blocked.
    std::vector<HalfPlane> obstacle_edges_within(Point2 center, double radius) const;

    /// Inward half-planes of the bounding walls lying within `radius`.
    std::vector<HalfPlane> boundary_edges_within(Point2 center, double radius) const;

    /// Obstacles whose rectangle comes within `radius` of `center`.
    std::vector<Obstacle> obstacles_within(Point2 center, double radius) const;

    /// Nearest legal position to p: clamped into bounds and pushed out of any
    /// obstacle with at least `clearance` meters to its faces.
    Point2 project_to_free_space(Point2 p, double clearance) const;
};

/// Deterministic scenario construction. Identical (kind, dims, seed) yield
/// identical obstacle lists.
EnvironmentSpec build_scenario(const Scenario& kind, double width, double height,
                               std::uint64_t seed);

}  // namespace bison
