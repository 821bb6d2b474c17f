#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "bison/geometry.hpp"

namespace bison {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard and the derived draws below avoid the implementation-defined parts
// of <random>, so a seed pins the whole simulation bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// One isotropic Gaussian draw per axis (Box-Muller), stddev sigma.
    Point2 gaussian_pair(double sigma) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = sigma * std::sqrt(-2.0 * std::log(1.0 - u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace bison
