#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace bison::kernels {

// Disk-coverage tests over sample-point arrays dominate the per-tick cost,
// so they get a scalar reference kernel plus a SIMD variant selected at
// runtime. Both paths compute dx*dx + dy*dy with plain mul/add (the kernel
// translation units are built with contraction off), so their masks are
// bit-identical and the choice of backend never changes a result.

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_supported(Backend b);
/// Throws std::runtime_error when the backend is not supported on this CPU.
void set_backend(Backend b);
std::string backend_name(Backend b);

/// mask[i] = 1 iff some site j has (px[i]-sx[j])^2 + (py[i]-sy[j])^2 <= radius^2.
void covered_mask(std::span<const double> px, std::span<const double> py,
                  std::span<const double> sx, std::span<const double> sy, double radius,
                  std::span<std::uint8_t> mask);

/// Number of points covered by at least one site.
std::size_t covered_count(std::span<const double> px, std::span<const double> py,
                          std::span<const double> sx, std::span<const double> sy, double radius);

namespace detail {
void covered_mask_scalar(const double* px, const double* py, std::size_t n_points,
                         const double* sx, const double* sy, std::size_t n_sites, double r2,
                         std::uint8_t* mask);
#if defined(__x86_64__) || defined(_M_X64)
void covered_mask_avx2(const double* px, const double* py, std::size_t n_points,
                       const double* sx, const double* sy, std::size_t n_sites, double r2,
                       std::uint8_t* mask);
#endif
}  // namespace detail

}  // namespace bison::kernels
