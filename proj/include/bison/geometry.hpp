#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bison/errors.hpp"

namespace bison {

// Absolute tolerance for geometric comparisons, in meters.
inline constexpr double kGeomEps = 1e-9;
// Polygons below this area are treated as degenerate.
inline constexpr double kAreaEps = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double squared_distance(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Oriented half-plane: the inward side is where `inward_normal` points.
struct HalfPlane {
    Point2 anchor;         // a point on the boundary line
    Point2 inward_normal;  // unit length

    double signed_distance(Point2 p) const { return dot(p - anchor, inward_normal); }
    bool contains(Point2 p, double eps = kGeomEps) const { return signed_distance(p) >= -eps; }
    HalfPlane flipped() const { return {anchor, {-inward_normal.x, -inward_normal.y}}; }
};

struct Disk {
    Point2 center;
    double radius = 0.0;
};

// Vertices are counter-clockwise; construct validated instances through
// make_polygon. Clipping routines build instances directly because their
// outputs are CCW by construction.
struct Polygon {
    std::vector<Point2> vertices;
};

/// Validates (>= 3 vertices, simple, non-degenerate) and normalizes to CCW.
Polygon make_polygon(std::vector<Point2> vertices);

/// Raw shoelace sum (signed; positive for CCW). No validation.
double signed_area(const Polygon& p);

/// Shoelace area of a CCW polygon. Throws GeometryError when degenerate.
double polygon_area(const Polygon& p);

/// Center of mass of a solid polygon. Throws GeometryError when the area is
/// too small for a stable division.
Point2 polygon_centroid(const Polygon& p);

/// Area-weighted mean of part centroids.
Point2 composite_centroid(std::span<const std::pair<Point2, double>> parts);

/// Sutherland-Hodgman clip against one half-plane. Empty result is a value.
std::optional<Polygon> clip_halfplane(const Polygon& p, const HalfPlane& h);

/// Regular k-gon inscribed in the disk, first vertex at angle 0.
Polygon disk_to_polygon(const Disk& d, int k);

/// Boundary through the midpoint of ab, inward side containing a.
HalfPlane perpendicular_bisector(Point2 a, Point2 b);

/// True when p lies inside or on the boundary of a convex CCW polygon.
bool point_in_convex_polygon(const Polygon& poly, Point2 p, double eps = kGeomEps);

/// Removes the closed axis-aligned rectangle [rmin, rmax] from a convex
/// region by cutting along the rectangle's two vertical edge lines and
/// keeping the solid pieces (left, right, band-below, band-above). Pieces
/// with negligible area are dropped; all returned pieces are convex.
std::vector<Polygon> subtract_rect(const Polygon& region, Point2 rmin, Point2 rmax);

/// True when the polygons share a boundary segment longer than min_overlap.
bool polygons_share_edge(const Polygon& a, const Polygon& b, double min_overlap = 1e-6);

}  // namespace bison
