#include "bison/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bison/errors.hpp"
#include "bison/kernels.hpp"

namespace bison {

CoverageGrid CoverageGrid::build(const EnvironmentSpec& env, double resolution) {
    if (resolution <= 0.0) throw ConfigError("pac_grid_resolution must be positive");
    CoverageGrid grid;
    grid.resolution = resolution;
    const auto nx = static_cast<std::size_t>(std::ceil(env.width / resolution - 1e-9));
    const auto ny = static_cast<std::size_t>(std::ceil(env.height / resolution - 1e-9));
    grid.xs.reserve(nx * ny);
    grid.ys.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = (static_cast<double>(j) + 0.5) * resolution;
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = (static_cast<double>(i) + 0.5) * resolution;
            if (env.point_in_free_space({x, y})) {
                grid.xs.push_back(x);
                grid.ys.push_back(y);
            }
        }
    }
    return grid;
}

double pac(std::span<const Point2> positions, const CoverageGrid& grid, double r_s) {
    if (grid.free_points() == 0) return 0.0;
    if (positions.empty()) return 0.0;
    std::vector<double> sx(positions.size());
    std::vector<double> sy(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        sx[i] = positions[i].x;
        sy[i] = positions[i].y;
    }
    const std::size_t covered = kernels::covered_count(grid.xs, grid.ys, sx, sy, r_s);
    return static_cast<double>(covered) / static_cast<double>(grid.free_points());
}

std::vector<std::uint8_t> pac_covered_mask(std::span<const Point2> positions,
                                           const CoverageGrid& grid, double r_s) {
    std::vector<std::uint8_t> mask(grid.free_points(), 0);
    if (positions.empty()) return mask;
    std::vector<double> sx(positions.size());
    std::vector<double> sy(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        sx[i] = positions[i].x;
        sy[i] = positions[i].y;
    }
    kernels::covered_mask(grid.xs, grid.ys, sx, sy, r_s, mask);
    return mask;
}

std::optional<double> adt(std::span<const Point2> positions, Point2 origin) {
    if (positions.empty()) return std::nullopt;
    double sum = 0.0;
    for (const Point2& p : positions) sum += distance(origin, p);
    return sum / static_cast<double>(positions.size());
}

double cdt_update(double previous_cdt, std::span<const double> displacements, int n_t) {
    if (n_t < 1) throw SimError("cdt_update needs at least one node");
    double sum = 0.0;
    for (double d : displacements) sum += std::abs(d);
    return previous_cdt + sum / static_cast<double>(n_t);
}

double uniformity(std::span<const double> cell_areas) {
    if (cell_areas.empty()) throw SimError("uniformity of an empty area list");
    double mean = 0.0;
    for (double a : cell_areas) {
        if (a <= 0.0) throw SimError("uniformity requires positive cell areas");
        mean += a;
    }
    mean /= static_cast<double>(cell_areas.size());
    double var = 0.0;
    for (double a : cell_areas) var += (a - mean) * (a - mean);
    var /= static_cast<double>(cell_areas.size());
    return std::sqrt(var) / mean;
}

std::vector<DriftDiffusionBin> drift_diffusion(std::span<const double> velocity_series,
                                               double delta_t, int bins) {
    if (delta_t <= 0.0) throw SimError("drift_diffusion needs delta_t > 0");
    if (bins < 1) throw SimError("drift_diffusion needs at least one bin");
    if (velocity_series.size() < 2) return {};

    const std::size_t n_inc = velocity_series.size() - 1;
    double v_min = velocity_series[0];
    double v_max = velocity_series[0];
    for (std::size_t t = 0; t < n_inc; ++t) {
        v_min = std::min(v_min, velocity_series[t]);
        v_max = std::max(v_max, velocity_series[t]);
    }
    double span_width = v_max - v_min;
    if (span_width <= 0.0) span_width = 1.0;  // constant series: one bin holds everything

    std::vector<DriftDiffusionBin> all(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        all[b].v_low = v_min + span_width * b / bins;
        all[b].v_high = v_min + span_width * (b + 1) / bins;
        all[b].v_center = 0.5 * (all[b].v_low + all[b].v_high);
    }
    for (std::size_t t = 0; t < n_inc; ++t) {
        const double v = velocity_series[t];
        auto b = static_cast<std::size_t>((v - v_min) / span_width * bins);
        if (b >= all.size()) b = all.size() - 1;
        const double dv = velocity_series[t + 1] - v;
        all[b].drift += dv / delta_t;
        all[b].diffusion += 0.5 * dv * dv / delta_t;
        all[b].samples += 1;
    }

    std::vector<DriftDiffusionBin> occupied;
    for (DriftDiffusionBin& bin : all) {
        if (bin.samples == 0) continue;
        bin.drift /= static_cast<double>(bin.samples);
        bin.diffusion /= static_cast<double>(bin.samples);
        occupied.push_back(bin);
    }
    return occupied;
}

double kinetic_energy_increment(double displacement, double dt) {
    if (dt <= 0.0) throw SimError("kinetic_energy_increment needs dt > 0");
    const double v = displacement / dt;
    return 0.5 * v * v;
}

}  // namespace bison
