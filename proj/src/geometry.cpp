#include "bison/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace bison {

namespace {

// Proper segment intersection test used by the simplicity check. Shared
// endpoints of adjacent edges are excluded by the caller.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > kGeomEps && d2 < -kGeomEps) || (d1 < -kGeomEps && d2 > kGeomEps)) &&
           ((d3 > kGeomEps && d4 < -kGeomEps) || (d3 < -kGeomEps && d4 > kGeomEps));
}

void drop_duplicate_vertices(std::vector<Point2>& v) {
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const Point2& p : v) {
        if (out.empty() || distance(out.back(), p) > kGeomEps) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= kGeomEps) out.pop_back();
    v = std::move(out);
}

}  // namespace

Polygon make_polygon(std::vector<Point2> vertices) {
    drop_duplicate_vertices(vertices);
    if (vertices.size() < 3) throw GeometryError("polygon needs at least 3 distinct vertices");

    Polygon p{std::move(vertices)};
    const double raw = signed_area(p);
    if (std::abs(raw) < kAreaEps) throw GeometryError("degenerate polygon: near-zero area");
    if (raw < 0.0) std::reverse(p.vertices.begin(), p.vertices.end());

    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
            if (segments_intersect(p.vertices[i], p.vertices[(i + 1) % n], p.vertices[j],
                                   p.vertices[(j + 1) % n])) {
                throw GeometryError("polygon is self-intersecting");
            }
        }
    }
    return p;
}

double signed_area(const Polygon& p) {
    const std::size_t n = p.vertices.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = p.vertices[i];
        const Point2& b = p.vertices[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;  // m(i)
    }
    return 0.5 * sum;
}

double polygon_area(const Polygon& p) {
    if (p.vertices.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    const double area = signed_area(p);
    if (area < kAreaEps) throw GeometryError("degenerate polygon: area not positive");
    return area;
}

Point2 polygon_centroid(const Polygon& p) {
    const double area = polygon_area(p);
    if (area <= kAreaEps) throw GeometryError("polygon centroid undefined: near-zero area");

    const std::size_t n = p.vertices.size();
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = p.vertices[i];
        const Point2& b = p.vertices[(i + 1) % n];
        const double m = a.x * b.y - b.x * a.y;
        cx += (a.x + b.x) * m;
        cy += (a.y + b.y) * m;
    }
    const double scale = 1.0 / (6.0 * area);
    return {scale * cx, scale * cy};
}

Point2 composite_centroid(std::span<const std::pair<Point2, double>> parts) {
    if (parts.empty()) throw GeometryError("composite centroid of an empty part list");
    double total = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& [centroid, area] : parts) {
        if (area <= 0.0) throw GeometryError("composite centroid part with non-positive area");
        total += area;
        cx += centroid.x * area;
        cy += centroid.y * area;
    }
    if (total <= kAreaEps) throw GeometryError("composite centroid with near-zero total area");
    return {cx / total, cy / total};
}

std::optional<Polygon> clip_halfplane(const Polygon& p, const HalfPlane& h) {
    const std::size_t n = p.vertices.size();
    std::vector<Point2> out;
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = p.vertices[i];
        const Point2& b = p.vertices[(i + 1) % n];
        const double da = h.signed_distance(a);
        const double db = h.signed_distance(b);
        if (da >= -kGeomEps) out.push_back(a);
        const bool crosses = (da > kGeomEps && db < -kGeomEps) || (da < -kGeomEps && db > kGeomEps);
        if (crosses) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    drop_duplicate_vertices(out);
    if (out.size() < 3) return std::nullopt;
    Polygon clipped{std::move(out)};
    if (signed_area(clipped) < kAreaEps) return std::nullopt;
    return clipped;
}

Polygon disk_to_polygon(const Disk& d, int k) {
    if (d.radius <= 0.0) throw GeometryError("disk radius must be positive");
    if (k < 3) throw GeometryError("disk discretization needs at least 3 vertices");
    Polygon p;
    p.vertices.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / k;
        p.vertices.push_back(
            {d.center.x + d.radius * std::cos(angle), d.center.y + d.radius * std::sin(angle)});
    }
    return p;
}

HalfPlane perpendicular_bisector(Point2 a, Point2 b) {
    const double len = distance(a, b);
    if (len <= kGeomEps) throw GeometryError("perpendicular bisector of coincident points");
    const Point2 mid = 0.5 * (a + b);
    const Point2 n = (1.0 / len) * (a - b);  // unit, points from b toward a
    return {mid, n};
}

bool point_in_convex_polygon(const Polygon& poly, Point2 p, double eps) {
    const std::size_t n = poly.vertices.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly.vertices[i];
        const Point2& b = poly.vertices[(i + 1) % n];
        if (cross(b - a, p - a) < -eps) return false;
    }
    return true;
}

std::vector<Polygon> subtract_rect(const Polygon& region, Point2 rmin, Point2 rmax) {
    if (!(rmin.x < rmax.x && rmin.y < rmax.y)) {
        throw GeometryError("subtract_rect: malformed rectangle");
    }
    // Cut lines through the rectangle's x-extent; the band between them is
    // further split into the solid pieces below and above the rectangle.
    const HalfPlane left_of{{rmin.x, 0.0}, {-1.0, 0.0}};
    const HalfPlane right_of{{rmax.x, 0.0}, {1.0, 0.0}};
    const HalfPlane in_band_left{{rmin.x, 0.0}, {1.0, 0.0}};
    const HalfPlane in_band_right{{rmax.x, 0.0}, {-1.0, 0.0}};
    const HalfPlane below{{0.0, rmin.y}, {0.0, -1.0}};
    const HalfPlane above{{0.0, rmax.y}, {0.0, 1.0}};

    std::vector<Polygon> pieces;
    auto keep = [&pieces](std::optional<Polygon> piece) {
        if (piece && signed_area(*piece) > 1e-9) pieces.push_back(std::move(*piece));
    };

    keep(clip_halfplane(region, left_of));
    keep(clip_halfplane(region, right_of));
    if (auto band = clip_halfplane(region, in_band_left)) {
        if (auto band2 = clip_halfplane(*band, in_band_right)) {
            keep(clip_halfplane(*band2, below));
            keep(clip_halfplane(*band2, above));
        }
    }
    return pieces;
}

bool polygons_share_edge(const Polygon& a, const Polygon& b, double min_overlap) {
    const std::size_t na = a.vertices.size();
    const std::size_t nb = b.vertices.size();
    for (std::size_t i = 0; i < na; ++i) {
        const Point2 p0 = a.vertices[i];
        const Point2 p1 = a.vertices[(i + 1) % na];
        const Point2 dir = p1 - p0;
        const double len = norm(dir);
        if (len <= kGeomEps) continue;
        const Point2 u = (1.0 / len) * dir;
        for (std::size_t j = 0; j < nb; ++j) {
            const Point2 q0 = b.vertices[j];
            const Point2 q1 = b.vertices[(j + 1) % nb];
            // collinearity: both endpoints of the other edge near this line
            if (std::abs(cross(u, q0 - p0)) > 1e-7 || std::abs(cross(u, q1 - p0)) > 1e-7) continue;
            const double t0 = dot(q0 - p0, u);
            const double t1 = dot(q1 - p0, u);
            const double lo = std::max(0.0, std::min(t0, t1));
            const double hi = std::min(len, std::max(t0, t1));
            if (hi - lo > min_overlap) return true;
        }
    }
    return false;
}

}  // namespace bison
