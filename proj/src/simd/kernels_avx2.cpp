#include "slmsrl1/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace slmsrl1::simd::detail {
namespace {

inline double hsum(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void axpy(double* out, const double* cur, const double* x, double gain, std::size_t n) {
    const __m256d g = _mm256_set1_pd(gain);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(cur + i), _mm256_mul_pd(g, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = cur[i] + gain * x[i];
}

void update_rl1(double* out, const double* cur, const double* prev, const double* x,
                double gain, double rho, double delta_r, std::size_t n) {
    const __m256d g = _mm256_set1_pd(gain);
    const __m256d r = _mm256_set1_pd(rho);
    const __m256d dr = _mm256_set1_pd(delta_r);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d c = _mm256_loadu_pd(cur + i);
        const __m256d step = _mm256_add_pd(c, _mm256_mul_pd(g, _mm256_loadu_pd(x + i)));
        const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(c, zero, _CMP_GT_OQ), one);
        const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(c, zero, _CMP_LT_OQ), one);
        const __m256d den = _mm256_add_pd(dr, _mm256_and_pd(_mm256_loadu_pd(prev + i), abs_mask));
        const __m256d attract = _mm256_div_pd(_mm256_mul_pd(r, _mm256_sub_pd(pos, neg)), den);
        _mm256_storeu_pd(out + i, _mm256_sub_pd(step, attract));
    }
    for (; i < n; ++i) {
        const double s = static_cast<double>(cur[i] > 0.0) - static_cast<double>(cur[i] < 0.0);
        out[i] = (cur[i] + gain * x[i]) - (rho * s) / (delta_r + std::fabs(prev[i]));
    }
}

constexpr KernelTable kTable{Isa::Avx2, &dot, &sq_dist, &axpy, &update_rl1};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kTable; }

}  // namespace slmsrl1::simd::detail
