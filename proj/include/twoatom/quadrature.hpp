// quadrature.hpp - adaptive Gauss-Kronrod integration of smooth real
// integrands on finite intervals.
#pragma once

#include <functional>

namespace twoatom {

struct QuadratureResult {
    double value;
    double error_estimate;
};

// Throws ConvergenceError when the error estimate stays above
// max(rel_tol * |I|, abs_floor) after max_depth bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                           double abs_floor = 1e-300, unsigned max_depth = 20);

}  // namespace twoatom
