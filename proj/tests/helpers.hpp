#pragma once

// Test-side helpers and independent oracles. These deliberately avoid the
// library's geometry routines where they act as a cross-check.

#include <cmath>
#include <random>
#include <vector>

#include "bison/geometry.hpp"

namespace bison::test {

// Independent point-in-convex-polygon test (CCW assumed).
inline bool inside_convex(const std::vector<Point2>& verts, Point2 p, double eps = 1e-9) {
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = verts[i];
        const Point2 b = verts[(i + 1) % n];
        const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (c < -eps) return false;
    }
    return true;
}

// Closed-form area of a regular k-gon inscribed in radius r.
inline double regular_polygon_area(int k, double r) {
    return 0.5 * k * r * r * std::sin(2.0 * M_PI / k);
}

// Andrew monotone chain, independent of the library geometry.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    auto turn = [](Point2 o, Point2 a, Point2 b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

// Random convex polygon: convex hull of random points around a center.
inline Polygon random_convex_polygon(std::mt19937& gen, Point2 center, double max_radius) {
    std::uniform_int_distribution<int> nd(8, 20);
    std::uniform_real_distribution<double> offset(-max_radius, max_radius);
    while (true) {
        std::vector<Point2> pts;
        const int n = nd(gen);
        for (int i = 0; i < n; ++i) pts.push_back({center.x + offset(gen), center.y + offset(gen)});
        const std::vector<Point2> hull = convex_hull(pts);
        if (hull.size() >= 4) return make_polygon(hull);
    }
}

// Monte-Carlo centroid of the region {inside polygon} \ {inside rejector},
// on a fixed grid of the polygon's bounding box.
struct GridCentroid {
    Point2 centroid;
    double area;
};

template <typename Member>
GridCentroid grid_region_centroid(Point2 lo, Point2 hi, double step, Member&& member) {
    double sx = 0.0, sy = 0.0;
    std::size_t count = 0;
    for (double y = lo.y + step / 2; y < hi.y; y += step) {
        for (double x = lo.x + step / 2; x < hi.x; x += step) {
            if (member(Point2{x, y})) {
                sx += x;
                sy += y;
                ++count;
            }
        }
    }
    GridCentroid out;
    out.area = static_cast<double>(count) * step * step;
    out.centroid = count ? Point2{sx / count, sy / count} : Point2{0, 0};
    return out;
}

}  // namespace bison::test
