// batch.hpp - column kernels over structure-of-arrays inputs, with a scalar
// reference and an AVX2 variant chosen at run time.
#pragma once

#include <cstddef>

namespace twoatom::simd {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

// Best variant supported by both the build and the running CPU.
Isa detected_isa();
// Variant used by the dispatching entry points; defaults to detected_isa().
Isa active_isa();
// Pins the dispatch to `isa` (falls back to Scalar when unavailable) and
// returns the variant actually selected.
Isa set_active_isa(Isa isa);

// Diagonal populations and the two anti-diagonal magnitudes of X states.
struct XStateColumns {
    const double* rho11;
    const double* rho22;
    const double* rho33;
    const double* rho44;
    const double* abs_rho23;
    const double* abs_rho14;
};

// out[i] = min(1, 2 max(0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33)))
void concurrence_x(const XStateColumns& in, double* out, std::size_t n);

// Weight of the dynamical connection on the {|11>, |00>} eigenvector track:
//   derived: |rho41|^2 / ((rho44 - l)^2 + |rho41|^2)
//   printed: |rho41|   / ((rho44 - l)^2 + |rho41|^2)
// with l the larger eigenvalue of [[rho11, rho14], [rho41, rho44]].
enum class WeightVariant { Derived, Printed };

void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant);

namespace scalar {
void concurrence_x(const XStateColumns& in, double* out, std::size_t n);
void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant);
}  // namespace scalar

namespace avx2 {
// Only callable when detected_isa() == Isa::Avx2.
void concurrence_x(const XStateColumns& in, double* out, std::size_t n);
void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant);
}  // namespace avx2

}  // namespace twoatom::simd
