#include "slmsrl1/simd/kernels.hpp"

#include <cmath>

namespace slmsrl1::simd {
namespace {

inline double sgn(double v) noexcept {
    return static_cast<double>(v > 0.0) - static_cast<double>(v < 0.0);
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void axpy(double* out, const double* cur, const double* x, double gain, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cur[i] + gain * x[i];
}

void update_rl1(double* out, const double* cur, const double* prev, const double* x,
                double gain, double rho, double delta_r, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double step = cur[i] + gain * x[i];
        const double attract = (rho * sgn(cur[i])) / (delta_r + std::fabs(prev[i]));
        out[i] = step - attract;
    }
}

constexpr KernelTable kTable{Isa::Scalar, &dot, &sq_dist, &axpy, &update_rl1};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kTable; }

}  // namespace slmsrl1::simd
