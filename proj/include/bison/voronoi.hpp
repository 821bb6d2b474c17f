#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bison/environment.hpp"
#include "bison/geometry.hpp"
#include "bison/perception.hpp"

namespace bison {

/// A node's restricted Voronoi cell: the part of its sensing disk it owns
/// after neighbor bisectors, bounding walls and obstacles are accounted for.
/// `parts` are the solid free-space pieces (one piece in the common case);
/// `centroid` and `area` are the composite over all pieces.
struct VoronoiCell {
    int owner_id = -1;
    Polygon region;               // convex hull stage: disk ∩ bisectors ∩ wall planes
    std::vector<Polygon> parts;   // solid pieces after obstacle subtraction
    Point2 centroid;
    double area = 0.0;
};

/// Builds the restricted cell. Starts from the 64-gon discretization of the
/// sensing disk, clips by the perpendicular bisector toward every perceived
/// neighbor and by each boundary half-plane, then removes nearby obstacle
/// rectangles by slab decomposition, keeping the pieces connected to the
/// owner. Returns nullopt when clipping annihilates the region.
std::optional<VoronoiCell> restricted_cell(int owner_id, Point2 owner,
                                           std::span<const PerceivedNeighbor> neighbors,
                                           std::span<const HalfPlane> boundary_planes,
                                           std::span<const Obstacle> nearby_obstacles,
                                           double r_s);

/// The movement target: the cell's (composite) center of mass.
Point2 target_centroid(const VoronoiCell& cell);

/// Number of vertices used for the disk discretization (area error < 0.2%).
inline constexpr int kDiskVertices = 64;

}  // namespace bison
