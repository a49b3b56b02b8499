#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace slmsrl1::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

// Inner-loop primitives shared by every adaptive filter variant.
//
// All pointers address `n` contiguous doubles. `update_rl1` and `axpy` are
// elementwise and every variant evaluates them with the same operation order,
// so they agree bit-for-bit with the scalar reference. `dot` and `sq_dist`
// are reductions; vector variants reassociate the sum and agree only to
// rounding.
struct KernelTable {
    Isa isa;

    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_i (a_i - b_i)^2
    double (*sq_dist)(const double* a, const double* b, std::size_t n);

    // out_i = cur_i + gain * x_i
    void (*axpy)(double* out, const double* cur, const double* x, double gain, std::size_t n);

    // out_i = (cur_i + gain * x_i) - (rho * sgn(cur_i)) / (delta_r + |prev_i|)
    void (*update_rl1)(double* out, const double* cur, const double* prev, const double* x,
                       double gain, double rho, double delta_r, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// Every table this binary was built with and the running CPU supports,
// scalar first.
std::vector<const KernelTable*> available_kernels();

// The table used by the library. Chosen once on first use: the widest
// supported ISA, unless SLMSRL1_KERNEL=scalar|avx2|neon is set.
const KernelTable& active_kernels() noexcept;

// Overrides the active table. Returns false if `isa` is unavailable.
bool select_kernels(Isa isa) noexcept;

bool parse_isa(std::string_view text, Isa& out) noexcept;

namespace detail {
#if defined(SLMSRL1_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(SLMSRL1_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif
}  // namespace detail

}  // namespace slmsrl1::simd
