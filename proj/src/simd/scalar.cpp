#include <algorithm>
#include <cmath>

#include "twoatom/simd/batch.hpp"

namespace twoatom::simd::scalar {

void concurrence_x(const XStateColumns& in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double c1 = in.abs_rho23[i] - std::sqrt(in.rho11[i] * in.rho44[i]);
        const double c2 = in.abs_rho14[i] - std::sqrt(in.rho22[i] * in.rho33[i]);
        const double c = std::max(std::max(c1, c2), 0.0);
        out[i] = std::min(c + c, 1.0);
    }
}

void connection_weight(const double* rho11, const double* rho44, const double* abs_rho41, double* out,
                       std::size_t n, WeightVariant variant) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = abs_rho41[i];
        const double a2 = a * a;
        const double d = rho11[i] - rho44[i];
        const double root = std::sqrt(d * d + 4.0 * a2);
        // gap = l - rho44, written without cancellation for either sign of d
        const double gap = d >= 0.0 ? 0.5 * (d + root) : (a2 + a2) / (root - d);
        const double norm2 = gap * gap + a2;
        const double num = variant == WeightVariant::Derived ? a2 : a;
        out[i] = a > 0.0 ? num / norm2 : 0.0;
    }
}

}  // namespace twoatom::simd::scalar
