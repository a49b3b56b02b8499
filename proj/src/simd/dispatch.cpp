#include "slmsrl1/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace slmsrl1::simd {
namespace {

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(SLMSRL1_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(SLMSRL1_HAVE_NEON)
            return true;  // baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* table_for(Isa isa) noexcept {
    if (!cpu_supports(isa)) return nullptr;
    switch (isa) {
        case Isa::Scalar:
            return &scalar_kernels();
#if defined(SLMSRL1_HAVE_AVX2)
        case Isa::Avx2:
            return &detail::avx2_kernels();
#endif
#if defined(SLMSRL1_HAVE_NEON)
        case Isa::Neon:
            return &detail::neon_kernels();
#endif
        default:
            return nullptr;
    }
}

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("SLMSRL1_KERNEL")) {
        Isa requested{};
        if (parse_isa(env, requested))
            if (const KernelTable* t = table_for(requested)) return t;
    }
    for (Isa isa : {Isa::Avx2, Isa::Neon})
        if (const KernelTable* t = table_for(isa)) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{initial_table()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool parse_isa(std::string_view text, Isa& out) noexcept {
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (text == isa_name(isa)) {
            out = isa;
            return true;
        }
    }
    return false;
}

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (const KernelTable* t = table_for(isa)) out.push_back(t);
    return out;
}

const KernelTable& active_kernels() noexcept {
    return *active_slot().load(std::memory_order_acquire);
}

bool select_kernels(Isa isa) noexcept {
    const KernelTable* t = table_for(isa);
    if (t == nullptr) return false;
    active_slot().store(t, std::memory_order_release);
    return true;
}

}  // namespace slmsrl1::simd
