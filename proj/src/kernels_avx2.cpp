// AVX2 variant of the coverage kernel. Compiled with -mavx2 -ffp-contract=off
// in its own translation unit; everything else stays ISA-generic.

#include "bison/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace bison::kernels::detail {

void covered_mask_avx2(const double* px, const double* py, std::size_t n_points,
                       const double* sx, const double* sy, std::size_t n_sites, double r2,
                       std::uint8_t* mask) {
    const __m256d vr2 = _mm256_set1_pd(r2);
    std::size_t i = 0;
    for (; i + 4 <= n_points; i += 4) {
        const __m256d x = _mm256_loadu_pd(px + i);
        const __m256d y = _mm256_loadu_pd(py + i);
        __m256d hit = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n_sites; ++j) {
            const __m256d dx = _mm256_sub_pd(x, _mm256_set1_pd(sx[j]));
            const __m256d dy = _mm256_sub_pd(y, _mm256_set1_pd(sy[j]));
            // mul + add, no FMA: keeps results bit-identical to the scalar path
            const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            hit = _mm256_or_pd(hit, _mm256_cmp_pd(d2, vr2, _CMP_LE_OQ));
            if (_mm256_movemask_pd(hit) == 0xF) break;
        }
        const int bits = _mm256_movemask_pd(hit);
        mask[i + 0] = static_cast<std::uint8_t>(bits & 1);
        mask[i + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
        mask[i + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
        mask[i + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
    }
    if (i < n_points) {
        covered_mask_scalar(px + i, py + i, n_points - i, sx, sy, n_sites, r2, mask + i);
    }
}

}  // namespace bison::kernels::detail

#endif  // x86_64
