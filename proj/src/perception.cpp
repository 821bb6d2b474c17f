#include "bison/perception.hpp"

#include <algorithm>

namespace bison {

std::vector<PerceivedNeighbor> perceive_neighbors(Point2 self_position,
                                                  std::span<const std::pair<int, Point2>> others,
                                                  double r_c, const NoiseModel& noise, Rng& rng) {
    std::vector<std::pair<int, Point2>> in_range;
    in_range.reserve(others.size());
    const double r2 = r_c * r_c;
    for (const auto& [id, pos] : others) {
        if (squared_distance(self_position, pos) <= r2) in_range.emplace_back(id, pos);
    }
    std::sort(in_range.begin(), in_range.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<PerceivedNeighbor> perceived;
    perceived.reserve(in_range.size());
    for (const auto& [id, pos] : in_range) {
        Point2 reported = pos;
        if (noise.sigma > 0.0) reported = reported + rng.gaussian_pair(noise.sigma);
        perceived.push_back({id, reported});
    }
    return perceived;
}

std::vector<HalfPlane> sense_obstacles(Point2 self_position, const EnvironmentSpec& env,
                                       double r_s) {
    std::vector<HalfPlane> planes = env.obstacle_edges_within(self_position, r_s);
    const std::vector<HalfPlane> walls = env.boundary_edges_within(self_position, r_s);
    planes.insert(planes.end(), walls.begin(), walls.end());
    return planes;
}

}  // namespace bison
