#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "twoatom/reference.hpp"

namespace twoatom::reference {

namespace {


double quad(const auto& f, double t) {
    if (t == 0.0) {
        return 0.0;
    }
    // tanh-sinh rather than Gauss-Kronrod: a different rule from the one in
    // the library, and its level-difference error estimate is scale-aware.
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    double err = 0.0;
    double l1 = 0.0;
    const double v = rule.integrate(f, 0.0, t, 1e-14, &err, &l1);
    if (!std::isfinite(v) || err > 1e-12 * std::max(1.0, l1)) {
        throw std::runtime_error("factors_by_quadrature: quadrature did not converge");
    }
    return v;
}

}  // namespace

FactorIntegrals factors_by_quadrature(const MarkovCoefficients& c, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("factors_by_quadrature: t must be >= 0");
    }
    const auto Gamma11 = [&](double s) { return c.a11 * s; };
    const auto Gamma12 = [&](double s) { return c.a12 * s; };
    const auto gamma12 = [&](double s) { return c.c12 * s; };

    const auto fp = [&](double s) {
        return (c.a11 - c.a12) * std::exp(-2.0 * std::complex<double>(Gamma11(s), -gamma12(s)));
    };
    const auto gp = [&](double s) {
        return (c.a11 + c.a12) * std::exp(-2.0 * std::complex<double>(Gamma11(s), gamma12(s)));
    };

    FactorIntegrals out{};
    out.F = quad([&](double s) { return (c.a11 - c.a12) * std::exp(-2.0 * (Gamma11(s) + Gamma12(s))); }, t);
    out.G = quad([&](double s) { return (c.a11 + c.a12) * std::exp(-2.0 * (Gamma11(s) - Gamma12(s))); }, t);
    out.Fp = {quad([&](double s) { return fp(s).real(); }, t), quad([&](double s) { return fp(s).imag(); }, t)};
    out.Gp = {quad([&](double s) { return gp(s).real(); }, t), quad([&](double s) { return gp(s).imag(); }, t)};
    return out;
}

}  // namespace twoatom::reference
