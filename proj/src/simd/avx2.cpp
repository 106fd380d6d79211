#include <immintrin.h>

#include "twoatom/simd/batch.hpp"

namespace twoatom::simd::avx2 {

void concurrence_x(const XStateColumns& in, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r11 = _mm256_loadu_pd(in.rho11 + i);
        const __m256d r22 = _mm256_loadu_pd(in.rho22 + i);
        const __m256d r33 = _mm256_loadu_pd(in.rho33 + i);
        const __m256d r44 = _mm256_loadu_pd(in.rho44 + i);
        const __m256d c1 = _mm256_sub_pd(_mm256_loadu_pd(in.abs_rho23 + i), _mm256_sqrt_pd(_mm256_mul_pd(r11, r44)));
        const __m256d c2 = _mm256_sub_pd(_mm256_loadu_pd(in.abs_rho14 + i), _mm256_sqrt_pd(_mm256_mul_pd(r22, r33)));
        const __m256d c = _mm256_max_pd(_mm256_max_pd(c1, c2), zero);
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_add_pd(c, c), one));
    }
    if (i < n) {
        const XStateColumns tail{in.rho11 + i, in.rho22 + i, in.rho33 + i,
                                 in.rho44 + i, in.abs_rho23 + i, in.abs_rho14 + i};
        scalar::concurrence_x(tail, out + i, n - i);
    }
}

void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d four = _mm256_set1_pd(4.0);
    const bool derived = variant == WeightVariant::Derived;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(abs_rho41 + i);
        const __m256d a2 = _mm256_mul_pd(a, a);
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(rho11 + i), _mm256_loadu_pd(rho44 + i));
        const __m256d root = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(four, a2)));
        const __m256d gap_pos = _mm256_mul_pd(half, _mm256_add_pd(d, root));
        const __m256d gap_neg = _mm256_div_pd(_mm256_add_pd(a2, a2), _mm256_sub_pd(root, d));
        const __m256d gap = _mm256_blendv_pd(gap_neg, gap_pos, _mm256_cmp_pd(d, zero, _CMP_GE_OQ));
        const __m256d norm2 = _mm256_add_pd(_mm256_mul_pd(gap, gap), a2);
        const __m256d w = _mm256_div_pd(derived ? a2 : a, norm2);
        // a == 0 gives 0/0 in some lanes; those are defined as 0
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(zero, w, _mm256_cmp_pd(a, zero, _CMP_GT_OQ)));
    }
    if (i < n) {
        scalar::connection_weight(rho11 + i, rho44 + i, abs_rho41 + i, out + i, n - i, variant);
    }
}

}  // namespace twoatom::simd::avx2
