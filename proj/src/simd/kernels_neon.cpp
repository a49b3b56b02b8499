#include "slmsrl1/simd/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace slmsrl1::simd::detail {
namespace {

// vfmaq_f64 is never used: the fused multiply-add would round differently
// from the scalar reference.

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
        acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void axpy(double* out, const double* cur, const double* x, double gain, std::size_t n) {
    const float64x2_t g = vdupq_n_f64(gain);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(cur + i), vmulq_f64(g, vld1q_f64(x + i))));
    for (; i < n; ++i) out[i] = cur[i] + gain * x[i];
}

void update_rl1(double* out, const double* cur, const double* prev, const double* x,
                double gain, double rho, double delta_r, std::size_t n) {
    const float64x2_t g = vdupq_n_f64(gain);
    const float64x2_t r = vdupq_n_f64(rho);
    const float64x2_t dr = vdupq_n_f64(delta_r);
    const float64x2_t zero = vdupq_n_f64(0.0);
    const uint64x2_t one_bits = vreinterpretq_u64_f64(vdupq_n_f64(1.0));
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t c = vld1q_f64(cur + i);
        const float64x2_t step = vaddq_f64(c, vmulq_f64(g, vld1q_f64(x + i)));
        const float64x2_t pos = vreinterpretq_f64_u64(vandq_u64(vcgtq_f64(c, zero), one_bits));
        const float64x2_t neg = vreinterpretq_f64_u64(vandq_u64(vcltq_f64(c, zero), one_bits));
        const float64x2_t den = vaddq_f64(dr, vabsq_f64(vld1q_f64(prev + i)));
        const float64x2_t attract = vdivq_f64(vmulq_f64(r, vsubq_f64(pos, neg)), den);
        vst1q_f64(out + i, vsubq_f64(step, attract));
    }
    for (; i < n; ++i) {
        const double s = static_cast<double>(cur[i] > 0.0) - static_cast<double>(cur[i] < 0.0);
        out[i] = (cur[i] + gain * x[i]) - (rho * s) / (delta_r + std::fabs(prev[i]));
    }
}

constexpr KernelTable kTable{Isa::Neon, &dot, &sq_dist, &axpy, &update_rl1};

}  // namespace

const KernelTable& neon_kernels() noexcept { return kTable; }

}  // namespace slmsrl1::simd::detail
