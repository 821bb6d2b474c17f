#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bison/environment.hpp"
#include "bison/geometry.hpp"

namespace bison {

/// Free-space sample lattice used for area-coverage rasterization. Sample
/// points are cell centers; cells inside obstacles are excluded, so the
/// denominator is the free area.
struct CoverageGrid {
    double resolution = 0.0;
    std::vector<double> xs;  // SoA layout feeds the coverage kernels directly
    std::vector<double> ys;

    std::size_t free_points() const { return xs.size(); }

    static CoverageGrid build(const EnvironmentSpec& env, double resolution);
};

/// Percentage area coverage: fraction of free sample points within r_s of any
/// position. Overlap counts once.
double pac(std::span<const Point2> positions, const CoverageGrid& grid, double r_s);

/// Per-sample covered flags for the same rasterization.
std::vector<std::uint8_t> pac_covered_mask(std::span<const Point2> positions,
                                           const CoverageGrid& grid, double r_s);

/// Mean straight-line distance from the injection origin to each position.
/// Empty input yields nullopt (the metric is undefined, not zero).
std::optional<double> adt(std::span<const Point2> positions, Point2 origin);

/// Recursive cumulative distance traveled: previous value plus the mean
/// per-node displacement of this tick.
double cdt_update(double previous_cdt, std::span<const double> displacements, int n_t);

/// Coefficient of variation of cell areas (population stddev / mean).
double uniformity(std::span<const double> cell_areas);

struct DriftDiffusionBin {
    double v_low = 0.0;
    double v_high = 0.0;
    double v_center = 0.0;
    double drift = 0.0;      // F
    double diffusion = 0.0;  // D
    std::size_t samples = 0;
};

/// Empirical drift and diffusion of the mean-velocity series: increments
/// v(t+dt) - v(t) are grouped into equal-width bins of v(t); each occupied
/// bin reports F = <dv/dt> and D = <dv^2/dt>/2. Empty bins are omitted.
std::vector<DriftDiffusionBin> drift_diffusion(std::span<const double> velocity_series,
                                               double delta_t, int bins);

/// Mass-normalized kinetic energy of one displacement: (d/dt)^2 / 2.
double kinetic_energy_increment(double displacement, double dt);

struct MetricsRecord {
    int tick = 0;
    double pac = 0.0;
    std::optional<double> adt;
    double cdt = 0.0;
    std::optional<double> u_a;
    std::optional<double> mean_velocity;
    int active_nodes = 0;
    int injected_count = 0;
    std::vector<double> per_node_energy;
};

}  // namespace bison
