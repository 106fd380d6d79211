#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "multiprecision.hpp"
#include "twoatom/reference.hpp"

namespace twoatom::reference {

namespace {

Real A(const Real& u) { return u * cos(u) + (u * u - 1) * sin(u); }
Real At(const Real& u) { return u * sin(u) - (u * u - 1) * cos(u); }
Real B(const Real& u) { return u * cos(u) - sin(u); }
Real Bt(const Real& u) { return u * sin(u) + cos(u); }

Real C(const Real& u, const Real& x, const Real& y, const Real& z) {
    return (y * y / 2 - z * z) * u * cos(u) + (x * x + y * y / 2 * (u * u - 1)) * sin(u);
}
Real Ct(const Real& u, const Real& x, const Real& y, const Real& z) {
    return (y * y / 2 - z * z) * u * sin(u) - (x * x + y * y / 2 * (u * u - 1)) * cos(u);
}
Real D(const Real& u, const Real& x, const Real& y) {
    return (x * x - 2 * y * y) * u * cos(u) + (2 * y * y + x * x * (u * u - 1)) * sin(u);
}
Real Dt(const Real& u, const Real& x, const Real& y) {
    return (x * x - 2 * y * y) * u * sin(u) - (2 * y * y + x * x * (u * u - 1)) * cos(u);
}

Real delta(Axis m, int k) { return static_cast<int>(m) == k ? 1 : 0; }

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(what);
    }
}

Real si_of(const Real& y, special::SiConvention conv) {
    const Real si = si_series(y);
    return conv == special::SiConvention::Shifted ? si - boost::math::constants::half_pi<Real>() : si;
}

}  // namespace

double f12_direct(double xd, Axis m) {
    require_positive(xd, "f12_direct: x must be positive");
    const Real x(xd);
    return static_cast<double>((delta(m, 1) + delta(m, 2)) / 2 * A(x) / pow(x, 3) - delta(m, 3) * B(x) / pow(x, 3));
}

double g12_direct(double xd, Axis m) {
    require_positive(xd, "g12_direct: x must be positive");
    const Real x(xd);
    return static_cast<double>((delta(m, 1) + delta(m, 2)) / 2 * At(x) / pow(x, 3) + delta(m, 3) * Bt(x) / pow(x, 3));
}

double b_ii_direct(double yd, Axis m) {
    require_positive(yd, "b_ii_direct: y must be positive");
    const Real y(yd);
    return static_cast<double>((delta(m, 1) + delta(m, 3)) / 2 * A(y) / pow(y, 3) - delta(m, 2) * B(y) / pow(y, 3));
}

double h_ii_direct(double yd, Axis m, special::SiConvention conv) {
    require_positive(yd, "h_ii_direct: y must be positive");
    const Real y(yd);
    const Real ci = ci_series(y);
    const Real si = si_of(y, conv);
    const Real y3 = pow(y, 3);
    return static_cast<double>((delta(m, 1) + delta(m, 3)) / (2 * y3) * (y - ci * A(y) - si * At(y)) -
                               delta(m, 2) / y3 * (ci * B(y) - si * Bt(y)));
}

// The C and D image terms of b12 are divided by z^5, like their h12
// companions; the cubic power would leave them dimensionally unbalanced.
double b12_direct(double xd, double yd, Axis m) {
    require_positive(xd, "b12_direct: x must be positive");
    require_positive(yd, "b12_direct: y must be positive");
    const Real x(xd), y(yd);
    const Real z = sqrt(x * x + y * y);
    return static_cast<double>(delta(m, 1) / 2 * A(z) / pow(z, 3) + delta(m, 3) * C(z, x, y, z) / pow(z, 5) -
                               delta(m, 2) / 2 * D(z, x, y) / pow(z, 5));
}

double h12_direct(double xd, double yd, Axis m) {
    require_positive(xd, "h12_direct: x must be positive");
    require_positive(yd, "h12_direct: y must be positive");
    const Real x(xd), y(yd);
    const Real z = sqrt(x * x + y * y);
    return static_cast<double>(delta(m, 1) / 2 * At(z) / pow(z, 3) + delta(m, 2) / 2 * Dt(z, x, y) / pow(z, 5) +
                               delta(m, 3) * Ct(z, x, y, z) / pow(z, 5));
}

MarkovCoefficients markov_coefficients_direct(const SystemConfig& config) {
    const bool plate = config.environment == Environment::ConductingPlate;
    const Real g0(config.coupling_ratio);
    Real a11 = 0, c11 = 0, a12 = 0, c12 = 0;
    for (Axis m : kAxes) {
        const Real r1(config.orientation_1[m]);
        const Real r2(config.orientation_2[m]);
        Real b = 0, h = 0, b12 = 0, h12 = 0;
        if (plate) {
            b = b_ii_direct(config.plate_distance_y, m);
            h = h_ii_direct(config.plate_distance_y, m, config.si_convention);
            b12 = b12_direct(config.separation_x, config.plate_distance_y, m);
            h12 = h12_direct(config.separation_x, config.plate_distance_y, m);
        }
        a11 += r1 * r1 * (1 - 3 * b);
        c11 += r1 * r1 * h;
        a12 += r1 * r2 * (Real(f12_direct(config.separation_x, m)) - b12);
        c12 += r1 * r2 * (Real(g12_direct(config.separation_x, m)) - h12);
    }
    MarkovCoefficients out;
    out.a11 = static_cast<double>(g0 * a11);
    out.c11 = static_cast<double>(3 * g0 / boost::math::constants::pi<Real>() * c11);
    out.a12 = static_cast<double>(3 * g0 * a12);
    out.c12 = static_cast<double>(3 * g0 * c12);
    out.symmetric_pair = config.equal_orientations();
    return out;
}

}  // namespace twoatom::reference
