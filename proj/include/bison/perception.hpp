#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bison/environment.hpp"
#include "bison/geometry.hpp"
#include "bison/rng.hpp"

namespace bison {

/// Zero-mean Gaussian position noise. sigma is the per-coordinate standard
/// deviation; the variance relation to channel noise power (sigma^2 = N_o/2)
/// is documentation only.
struct NoiseModel {
    double sigma = 0.0;
    double mu = 0.0;  // fixed 0
};

struct PerceivedNeighbor {
    int node_id = -1;
    Point2 perceived_position;
};

/// Neighbors within communication range, each reported at its true position
/// plus fresh i.i.d. Gaussian error per coordinate. Membership is decided on
/// true distances, so the id set is noise-invariant; draws consume the stream
/// in ascending id order.
std::vector<PerceivedNeighbor> perceive_neighbors(Point2 self_position,
                                                  std::span<const std::pair<int, Point2>> others,
                                                  double r_c, const NoiseModel& noise, Rng& rng);

/// Noise-free obstacle constraints near the node: faces of obstacles within
/// sensing range plus the bounding walls of the environment.
std::vector<HalfPlane> sense_obstacles(Point2 self_position, const EnvironmentSpec& env,
                                       double r_s);

}  // namespace bison
