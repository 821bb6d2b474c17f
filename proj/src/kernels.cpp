#include "bison/kernels.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bison::kernels {

namespace detail {

void covered_mask_scalar(const double* px, const double* py, std::size_t n_points,
                         const double* sx, const double* sy, std::size_t n_sites, double r2,
                         std::uint8_t* mask) {
    for (std::size_t i = 0; i < n_points; ++i) {
        std::uint8_t hit = 0;
        for (std::size_t j = 0; j < n_sites; ++j) {
            const double dx = px[i] - sx[j];
            const double dy = py[i] - sy[j];
            if (dx * dx + dy * dy <= r2) {
                hit = 1;
                break;
            }
        }
        mask[i] = hit;
    }
}

}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend pick_default() {
    if (const char* forced = std::getenv("BISON_KERNEL")) {
        const std::string name(forced);
        if (name == "scalar") return Backend::Scalar;
        if (name == "avx2" && cpu_has_avx2()) return Backend::Avx2;
    }
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

Backend& backend_slot() {
    static Backend current = pick_default();
    return current;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b)) {
        throw std::runtime_error("kernel backend not supported on this CPU: " + backend_name(b));
    }
    backend_slot() = b;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

void covered_mask(std::span<const double> px, std::span<const double> py,
                  std::span<const double> sx, std::span<const double> sy, double radius,
                  std::span<std::uint8_t> mask) {
    if (px.size() != py.size() || px.size() != mask.size() || sx.size() != sy.size()) {
        throw std::invalid_argument("covered_mask: mismatched array lengths");
    }
    const double r2 = radius * radius;
    switch (backend_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2:
            detail::covered_mask_avx2(px.data(), py.data(), px.size(), sx.data(), sy.data(),
                                      sx.size(), r2, mask.data());
            return;
#endif
        default:
            detail::covered_mask_scalar(px.data(), py.data(), px.size(), sx.data(), sy.data(),
                                        sx.size(), r2, mask.data());
            return;
    }
}

std::size_t covered_count(std::span<const double> px, std::span<const double> py,
                          std::span<const double> sx, std::span<const double> sy, double radius) {
    std::vector<std::uint8_t> mask(px.size());
    covered_mask(px, py, sx, sy, radius, mask);
    return std::accumulate(mask.begin(), mask.end(), std::size_t{0});
}

}  // namespace bison::kernels
