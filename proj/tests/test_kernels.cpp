#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bison/kernels.hpp"

using namespace bison;

namespace {

struct BackendGuard {
    kernels::Backend saved;
    BackendGuard() : saved(kernels::active_backend()) {}
    ~BackendGuard() { kernels::set_backend(saved); }
};

// Straightforward reference computed with hypot, independent of the kernels.
std::vector<std::uint8_t> hypot_mask(const std::vector<double>& px, const std::vector<double>& py,
                                     const std::vector<double>& sx, const std::vector<double>& sy,
                                     double r) {
    std::vector<std::uint8_t> mask(px.size(), 0);
    for (std::size_t i = 0; i < px.size(); ++i) {
        for (std::size_t j = 0; j < sx.size(); ++j) {
            if (std::hypot(px[i] - sx[j], py[i] - sy[j]) <= r) {
                mask[i] = 1;
                break;
            }
        }
    }
    return mask;
}

}  // namespace

TEST_CASE("covered_mask scalar semantics") {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);

    const std::vector<double> px{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> py{0.0, 0.0, 0.0, 0.0};
    const std::vector<double> sx{0.0};
    const std::vector<double> sy{0.0};
    std::vector<std::uint8_t> mask(px.size());
    kernels::covered_mask(px, py, sx, sy, 1.0, mask);
    CHECK(mask == std::vector<std::uint8_t>{1, 1, 0, 0});  // boundary point counts
    CHECK(kernels::covered_count(px, py, sx, sy, 1.0) == 2);

    // no sites: nothing covered
    kernels::covered_mask(px, py, {}, {}, 1.0, mask);
    CHECK(mask == std::vector<std::uint8_t>{0, 0, 0, 0});
}

TEST_CASE("scalar kernel agrees with an independent hypot reference") {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);
    std::mt19937 gen(21);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> px(257), py(257), sx(13), sy(13);
        for (auto& v : px) v = coord(gen);
        for (auto& v : py) v = coord(gen);
        for (auto& v : sx) v = coord(gen);
        for (auto& v : sy) v = coord(gen);
        std::vector<std::uint8_t> mask(px.size());
        kernels::covered_mask(px, py, sx, sy, 1.5, mask);
        CHECK(mask == hypot_mask(px, py, sx, sy, 1.5));
    }
}

TEST_CASE("AVX2 and scalar backends produce identical masks") {
    if (!kernels::backend_supported(kernels::Backend::Avx2)) {
        MESSAGE("avx2 not available; dispatch stays scalar");
        return;
    }
    BackendGuard guard;
    std::mt19937 gen(22);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n_points = 1 + static_cast<std::size_t>(gen() % 1000);
        const std::size_t n_sites = gen() % 40;
        std::vector<double> px(n_points), py(n_points), sx(n_sites), sy(n_sites);
        for (auto& v : px) v = coord(gen);
        for (auto& v : py) v = coord(gen);
        for (auto& v : sx) v = coord(gen);
        for (auto& v : sy) v = coord(gen);

        std::vector<std::uint8_t> scalar_mask(n_points), avx2_mask(n_points);
        kernels::set_backend(kernels::Backend::Scalar);
        kernels::covered_mask(px, py, sx, sy, 7.5, scalar_mask);
        kernels::set_backend(kernels::Backend::Avx2);
        kernels::covered_mask(px, py, sx, sy, 7.5, avx2_mask);
        CHECK(scalar_mask == avx2_mask);
    }
}

TEST_CASE("backend selection is reported and validated") {
    CHECK(kernels::backend_supported(kernels::Backend::Scalar));
    CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
    CHECK(kernels::backend_name(kernels::Backend::Avx2) == "avx2");
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);
    CHECK(kernels::active_backend() == kernels::Backend::Scalar);
}
