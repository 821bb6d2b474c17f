#include "bison/voronoi.hpp"

#include <algorithm>
#include <limits>

namespace bison {

namespace {

// Pieces belong to the owner's cell only if reachable from the owner's piece
// through shared free-space edges; disconnected slivers on the far side of a
// wall are not part of the region the node can claim.
std::vector<Polygon> keep_connected_to_owner(std::vector<Polygon> pieces, Point2 owner) {
    if (pieces.size() <= 1) return pieces;

    const std::size_t n = pieces.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (point_in_convex_polygon(pieces[i], owner, 1e-7)) {
            start = i;
            break;
        }
    }
    if (start == n) {
        // Owner on a cut line between pieces; fall back to the piece whose
        // centroid is nearest.
        double best = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = squared_distance(polygon_centroid(pieces[i]), owner);
            if (d < best) {
                best = d;
                start = i;
            }
        }
    }

    std::vector<bool> kept(n, false);
    std::vector<std::size_t> frontier{start};
    kept[start] = true;
    while (!frontier.empty()) {
        const std::size_t cur = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            if (!kept[i] && polygons_share_edge(pieces[cur], pieces[i])) {
                kept[i] = true;
                frontier.push_back(i);
            }
        }
    }

    std::vector<Polygon> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (kept[i]) out.push_back(std::move(pieces[i]));
    }
    return out;
}

}  // namespace

std::optional<VoronoiCell> restricted_cell(int owner_id, Point2 owner,
                                           std::span<const PerceivedNeighbor> neighbors,
                                           std::span<const HalfPlane> boundary_planes,
                                           std::span<const Obstacle> nearby_obstacles,
                                           double r_s) {
    if (r_s <= 0.0) throw GeometryError("sensing radius must be positive");

    Polygon cell = disk_to_polygon({owner, r_s}, kDiskVertices);

    for (const PerceivedNeighbor& nb : neighbors) {
        // A perceived position that collapses onto the owner leaves the
        // bisector undefined; skip it for this tick.
        if (distance(owner, nb.perceived_position) <= kGeomEps) continue;
        auto clipped = clip_halfplane(cell, perpendicular_bisector(owner, nb.perceived_position));
        if (!clipped) return std::nullopt;
        cell = std::move(*clipped);
    }
    for (const HalfPlane& plane : boundary_planes) {
        auto clipped = clip_halfplane(cell, plane);
        if (!clipped) return std::nullopt;
        cell = std::move(*clipped);
    }

    std::vector<Polygon> pieces{cell};
    for (const Obstacle& obstacle : nearby_obstacles) {
        std::vector<Polygon> next;
        for (const Polygon& piece : pieces) {
            auto sub = subtract_rect(piece, obstacle.min_corner, obstacle.max_corner);
            next.insert(next.end(), std::make_move_iterator(sub.begin()),
                        std::make_move_iterator(sub.end()));
        }
        pieces = std::move(next);
        if (pieces.empty()) return std::nullopt;
    }
    pieces = keep_connected_to_owner(std::move(pieces), owner);
    if (pieces.empty()) return std::nullopt;

    std::vector<std::pair<Point2, double>> weighted;
    weighted.reserve(pieces.size());
    for (const Polygon& piece : pieces) {
        weighted.emplace_back(polygon_centroid(piece), polygon_area(piece));
    }

    VoronoiCell result;
    result.owner_id = owner_id;
    result.region = std::move(cell);
    result.parts = std::move(pieces);
    result.centroid = composite_centroid(weighted);
    result.area = 0.0;
    for (const auto& [c, a] : weighted) result.area += a;
    if (result.area <= kAreaEps) return std::nullopt;
    return result;
}

Point2 target_centroid(const VoronoiCell& cell) { return cell.centroid; }

}  // namespace bison
