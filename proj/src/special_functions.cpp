#include "twoatom/special_functions.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "twoatom/errors.hpp"

namespace twoatom::special {
namespace {

// Below this argument the Maclaurin series is used; above it the continued
// fraction for E1(iy). At y = 4 the largest series term is ~10, so the sum
// keeps ~1e-15 absolute accuracy, and the fraction converges in < 40 steps.
constexpr double kSeriesSwitch = 4.0;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

SiCi series(double y) {
    const double y2 = y * y;
    // Si = sum (-1)^k y^{2k+1} / ((2k+1)(2k+1)!)
    // Ci - gamma - ln y = sum_{k>=1} (-1)^k y^{2k} / (2k (2k)!)
    double si = 0.0;
    double ci = 0.0;
    double power = y;  // (-1)^k y^{2k+1} / (2k+1)!
    for (int k = 0; k < 200; ++k) {
        const double n = 2.0 * k + 1.0;
        const double si_term = power / n;
        si += si_term;
        // (-1)^{k+1} y^{2k+2} / (2k+2)! from the sine-series power
        const double cos_power = -power * y / (n + 1.0);
        const double ci_term = cos_power / (n + 1.0);
        ci += ci_term;
        if (std::abs(si_term) < 1e-18 * std::abs(si) && std::abs(ci_term) < 1e-18) {
            break;
        }
        power *= -y2 / ((n + 1.0) * (n + 2.0));
    }
    return {si, kEulerGamma + std::log(y) + ci};
}

// Modified Lentz evaluation of the continued fraction for E1(iy):
//   Ci(y) + i (Si(y) - pi/2) = -E1(iy).
SiCi continued_fraction(double y) {
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    cd b(1.0, y);
    cd c(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    int i = 2;
    for (; i <= 1000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) {
            break;
        }
    }
    if (i > 1000) {
        throw ConvergenceError("sine_cosine_integrals: continued fraction did not converge");
    }
    h *= cd(std::cos(y), -std::sin(y));
    return {kPi / 2.0 + h.imag(), -h.real()};
}

constexpr int kTaylorTerms = 10;

// Factorials 0! .. 21!
constexpr std::array<double, 22> factorials = [] {
    std::array<double, 22> f{};
    f[0] = 1.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        f[i] = f[i - 1] * static_cast<double>(i);
    }
    return f;
}();

}  // namespace

SiCi sine_cosine_integrals(double y) {
    require_finite(y, "sine_cosine_integrals");
    if (y <= 0.0) {
        throw DomainError("sine_cosine_integrals: y must be > 0");
    }
    return y <= kSeriesSwitch ? series(y) : continued_fraction(y);
}

double sine_integral(double y) {
    require_finite(y, "sine_integral");
    if (y < 0.0) {
        throw DomainError("sine_integral: y must be >= 0");
    }
    if (y == 0.0) {
        return 0.0;
    }
    return sine_cosine_integrals(y).si;
}

double cosine_integral(double y) {
    require_finite(y, "cosine_integral");
    if (y <= 0.0) {
        throw DomainError("cosine_integral: y must be > 0");
    }
    return sine_cosine_integrals(y).ci;
}

double sine_integral_convention(double y, SiConvention convention) {
    const double si = sine_integral(y);
    return convention == SiConvention::Shifted ? si - kPi / 2.0 : si;
}

const char* to_string(SiConvention convention) {
    return convention == SiConvention::Shifted ? "shifted" : "plain";
}

double TrigCombination::odd(double u) const {
    require_finite(u, "envelope");
    if (std::abs(u) >= kTaylorSwitch) {
        return alpha * u * std::cos(u) + beta * std::sin(u) + gamma * u * u * std::sin(u);
    }
    // coefficient of u^{2k+1}:
    //   (-1)^k [alpha/(2k)! + beta/(2k+1)! - gamma/(2k-1)! (k >= 1)]
    const double u2 = u * u;
    double acc = 0.0;
    for (int k = kTaylorTerms - 1; k >= 0; --k) {
        double c = alpha / factorials[2 * k] + beta / factorials[2 * k + 1];
        if (k >= 1) {
            c -= gamma / factorials[2 * k - 1];
        }
        if (k % 2 == 1) {
            c = -c;
        }
        acc = acc * u2 + c;
    }
    return acc * u;
}

double TrigCombination::even(double u) const {
    require_finite(u, "envelope");
    if (std::abs(u) >= kTaylorSwitch) {
        return alpha * u * std::sin(u) + beta * std::cos(u) + gamma * u * u * std::cos(u);
    }
    // coefficient of u^{2k}:
    //   (-1)^k [beta/(2k)! - (alpha/(2k-1)! + gamma/(2k-2)!) (k >= 1)]
    const double u2 = u * u;
    double acc = 0.0;
    for (int k = kTaylorTerms - 1; k >= 0; --k) {
        double c = beta / factorials[2 * k];
        if (k >= 1) {
            c -= alpha / factorials[2 * k - 1] + gamma / factorials[2 * k - 2];
        }
        if (k % 2 == 1) {
            c = -c;
        }
        acc = acc * u2 + c;
    }
    return acc;
}

double envelope_A(double u) { return TrigCombination{1.0, -1.0, 1.0}.odd(u); }
double envelope_A_tilde(double u) { return TrigCombination{1.0, 1.0, -1.0}.even(u); }
double envelope_B(double u) { return TrigCombination{1.0, -1.0, 0.0}.odd(u); }
double envelope_B_tilde(double u) { return TrigCombination{1.0, 1.0, 0.0}.even(u); }

GeometryScales GeometryScales::from_separation_and_plate(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || x <= 0.0 || y <= 0.0) {
        throw DomainError("GeometryScales: x and y must be finite and > 0");
    }
    return {x, y, std::hypot(x, y)};
}

namespace {

void require_valid(const GeometryScales& s) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x <= 0.0 || s.y <= 0.0) {
        throw DomainError("GeometryScales: x and y must be finite and > 0");
    }
    if (std::abs(s.z - std::hypot(s.x, s.y)) > 1e-14 * s.z) {
        throw DomainError("GeometryScales: z must equal sqrt(x^2 + y^2)");
    }
}

// C, C~ share (y^2/2 - z^2, x^2 - y^2/2, y^2/2); D, D~ share
// (x^2 - 2y^2, 2y^2 - x^2, x^2). The tilde forms negate the last two.
}  // namespace

void GeometryScales::validate() const { require_valid(*this); }

namespace {

TrigCombination c_family(const GeometryScales& s) {
    const double x2 = s.x * s.x;
    const double y2 = s.y * s.y;
    const double z2 = s.z * s.z;
    return {0.5 * y2 - z2, x2 - 0.5 * y2, 0.5 * y2};
}

TrigCombination d_family(const GeometryScales& s) {
    const double x2 = s.x * s.x;
    const double y2 = s.y * s.y;
    return {x2 - 2.0 * y2, 2.0 * y2 - x2, x2};
}

TrigCombination tilde(TrigCombination c) { return {c.alpha, -c.beta, -c.gamma}; }

}  // namespace

double envelope_C(double u, const GeometryScales& s) {
    require_valid(s);
    return c_family(s).odd(u);
}

double envelope_C_tilde(double u, const GeometryScales& s) {
    require_valid(s);
    return tilde(c_family(s)).even(u);
}

double envelope_D(double u, const GeometryScales& s) {
    require_valid(s);
    return d_family(s).odd(u);
}

double envelope_D_tilde(double u, const GeometryScales& s) {
    require_valid(s);
    return tilde(d_family(s)).even(u);
}

}  // namespace twoatom::special
