#pragma once

#include <stdexcept>
#include <string>

namespace bison {

// Degenerate or inconsistent planar geometry (collinear polygons, zero-length
// bisector segments, empty composites).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario construction failures: infeasible obstacle placement, blueprints
// that do not fit the requested bounds, overlapping obstacles.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration values; message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime simulation failures: blocked injection, unknown node ids,
// unplannable exit paths, illegal positions.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bison
