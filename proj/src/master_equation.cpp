// Brute-force route: integrate the coefficient-form master equation directly.
#include <cmath>
#include <string>

#include "twoatom/dynamics.hpp"
#include "twoatom/errors.hpp"

namespace twoatom {

namespace {

struct Operators {
    Matrix4c lower1 = Matrix4c::Zero();  // sigma_-^1
    Matrix4c lower2 = Matrix4c::Zero();  // sigma_-^2
    Matrix4c raise1;
    Matrix4c raise2;
    Matrix4c number1;
    Matrix4c number2;

    Operators() {
        // index: 0 |11>, 1 |10>, 2 |01>, 3 |00>
        lower1(2, 0) = 1.0;
        lower1(3, 1) = 1.0;
        lower2(1, 0) = 1.0;
        lower2(3, 2) = 1.0;
        raise1 = lower1.adjoint();
        raise2 = lower2.adjoint();
        number1 = raise1 * lower1;
        number2 = raise2 * lower2;
    }
};

const Operators& ops() {
    static const Operators o;
    return o;
}

Matrix4c commutator(const Matrix4c& a, const Matrix4c& b) { return a * b - b * a; }

}  // namespace

Matrix4c master_equation_rhs(const Matrix4c& rho, const MarkovCoefficients& c) {
    const auto& o = ops();
    const cplx minus_i(0.0, -1.0);
    Matrix4c out = minus_i * c.c11 * (commutator(o.number1, rho) + commutator(o.number2, rho));
    out += minus_i * c.c12 * (commutator(o.raise1 * o.lower2, rho) + commutator(o.raise2 * o.lower1, rho));

    out -= c.a11 * (o.number1 * rho + rho * o.number1 - 2.0 * o.lower1 * rho * o.raise1);
    out -= c.a11 * (o.number2 * rho + rho * o.number2 - 2.0 * o.lower2 * rho * o.raise2);

    // sum over (i, j) in {(1, 2), (2, 1)}
    const auto cross = [&](const Matrix4c& raise_i, const Matrix4c& lower_i, const Matrix4c& raise_j,
                           const Matrix4c& lower_j) {
        return raise_i * lower_j * rho + rho * raise_j * lower_i - lower_j * rho * raise_i - lower_i * rho * raise_j;
    };
    out -= c.a12 * (cross(o.raise1, o.lower1, o.raise2, o.lower2) + cross(o.raise2, o.lower2, o.raise1, o.lower1));
    return out;
}

namespace {

Matrix4c rk4(Matrix4c rho, const MarkovCoefficients& c, double t, int steps) {
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) {
        const Matrix4c k1 = master_equation_rhs(rho, c);
        const Matrix4c k2 = master_equation_rhs(rho + 0.5 * h * k1, c);
        const Matrix4c k3 = master_equation_rhs(rho + 0.5 * h * k2, c);
        const Matrix4c k4 = master_equation_rhs(rho + h * k3, c);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

// Free evolution under H_s = (w0/2)(sz x 1 + 1 x sz) with w0 = 1.
Matrix4c to_lab_frame(Matrix4c rho, double t) {
    constexpr double energy[4] = {1.0, 0.0, 0.0, -1.0};
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            rho(k, l) *= std::polar(1.0, -(energy[k] - energy[l]) * t);
        }
    }
    return rho;
}

}  // namespace

DensityMatrix4 integrate_master_equation(const PureBipartiteState& state, const MarkovCoefficients& coeffs,
                                         double t, int steps) {
    if (steps < 1) {
        throw DomainError("integrate_master_equation: steps must be >= 1");
    }
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("integrate_master_equation: t must be finite and >= 0");
    }
    state.validate();
    const Matrix4c rho0 = state.projector();
    const Matrix4c fine = rk4(rho0, coeffs, t, steps);
    // RK4 error scales as h^4: |fine - coarse| / 15 estimates the error of fine.
    const Matrix4c coarse = steps >= 2 ? rk4(rho0, coeffs, t, steps / 2) : rk4(rho0, coeffs, t, 2 * steps);
    const double estimate = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
    if (estimate > 1e-6) {
        throw ConvergenceError("integrate_master_equation: Richardson error estimate " + std::to_string(estimate) +
                               " exceeds 1e-6; increase steps");
    }
    return DensityMatrix4(to_lab_frame(fine, t));
}

}  // namespace twoatom
