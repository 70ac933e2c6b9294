#include <atomic>
#include <cstdlib>
#include <string>

#include "govpulse/errors.hpp"
#include "govpulse/kernels.hpp"

namespace govpulse::kernels {

#if !defined(GOVPULSE_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(GOVPULSE_HAVE_NEON)
const KernelTable* neon_table() { return nullptr; }
#endif

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool is_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(GOVPULSE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon: return neon_table() != nullptr;
    }
    return false;
}

namespace {

const KernelTable* table_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &scalar_table();
        case Isa::avx2: return avx2_table();
        case Isa::neon: return neon_table();
    }
    return nullptr;
}

const KernelTable* detect() {
    if (const char* forced = std::getenv("GOVPULSE_SIMD")) {
        const std::string name(forced);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (name == isa_name(isa) && is_supported(isa)) return table_for(isa);
        }
    }
    if (is_supported(Isa::avx2)) return avx2_table();
    if (is_supported(Isa::neon)) return neon_table();
    return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{detect()};
    return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
    if (!is_supported(isa)) {
        throw DomainError("kernel variant not supported on this CPU: " + std::string(isa_name(isa)));
    }
    current().store(table_for(isa), std::memory_order_release);
}

}  // namespace govpulse::kernels
