#include <atomic>

#include "twoatom/simd/batch.hpp"

namespace twoatom::simd {

namespace {

#if defined(TWOATOM_BUILD_AVX2)
constexpr bool kBuiltAvx2 = true;
#else
constexpr bool kBuiltAvx2 = false;
#endif

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

}  // namespace

#if !defined(TWOATOM_BUILD_AVX2)
namespace avx2 {
void concurrence_x(const XStateColumns& in, double* out, std::size_t n) { scalar::concurrence_x(in, out, n); }
void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant) {
    scalar::connection_weight(rho11, rho44, abs_rho41, out, n, variant);
}
}  // namespace avx2
#endif

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
#if defined(__x86_64__) || defined(_M_X64)
    if (kBuiltAvx2 && __builtin_cpu_supports("avx2")) {
        return Isa::Avx2;
    }
#endif
    return Isa::Scalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
    const Isa chosen = isa == Isa::Avx2 && detected_isa() != Isa::Avx2 ? Isa::Scalar : isa;
    active().store(chosen, std::memory_order_relaxed);
    return chosen;
}

void concurrence_x(const XStateColumns& in, double* out, std::size_t n) {
    if (active_isa() == Isa::Avx2) {
        avx2::concurrence_x(in, out, n);
    } else {
        scalar::concurrence_x(in, out, n);
    }
}

void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant) {
    if (active_isa() == Isa::Avx2) {
        avx2::connection_weight(rho11, rho44, abs_rho41, out, n, variant);
    } else {
        scalar::connection_weight(rho11, rho44, abs_rho41, out, n, variant);
    }
}

}  // namespace twoatom::simd
