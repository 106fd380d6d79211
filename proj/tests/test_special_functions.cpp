#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "twoatom/errors.hpp"
#include "twoatom/reference.hpp"
#include "twoatom/special_functions.hpp"

using namespace twoatom;
using namespace twoatom::special;

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Asymptotic auxiliary functions f, g summed in 50 digits up to the smallest
// term; valid for large y.
std::pair<double, double> si_ci_asymptotic(double yd) {
    const Real y(yd);
    Real f = 0, g = 0, term = 1 / y;  // (-1)^k (2k)! / y^(2k+1)
    Real last = abs(term) * 2;
    for (int k = 0; k < 400 && abs(term) < last; ++k) {
        f += term;
        g += term * (2 * k + 1) / y;
        last = abs(term);
        term *= -Real((2 * k + 1) * (2 * k + 2)) / (y * y);
    }
    const Real si = boost::math::constants::half_pi<Real>() - f * cos(y) - g * sin(y);
    const Real ci = f * sin(y) - g * cos(y);
    return {static_cast<double>(si), static_cast<double>(ci)};
}

}  // namespace

TEST_CASE("sine integral reference values") {
    CHECK(sine_integral(0.0) == 0.0);
    CHECK(sine_integral(1.0) == doctest::Approx(0.946083070367183).epsilon(1e-14));
    CHECK(std::abs(sine_integral(1e3) - kPi / 2) < 2e-3);
    CHECK_THROWS_AS(sine_integral(-1.0), DomainError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("cosine integral reference values") {
    CHECK(cosine_integral(1.0) == doctest::Approx(0.337403922900968).epsilon(1e-14));
    CHECK(std::abs(cosine_integral(1e-6) - std::log(1e-6) - kEulerGamma) < 1e-10);
    for (double y : {1e3, 2.5e3, 1e4}) {
        CHECK(std::abs(cosine_integral(y)) <= 2.0 / y);
    }
    CHECK_THROWS_AS(cosine_integral(0.0), DomainError);
    CHECK_THROWS_AS(cosine_integral(-2.0), DomainError);
}

TEST_CASE("Si and Ci against the series oracle on (0, 50]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1e-8, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double y = u(rng);
        CHECK(std::abs(sine_integral(y) - reference::sine_integral_series(y)) < 1e-12);
        CHECK(std::abs(cosine_integral(y) - reference::cosine_integral_series(y)) < 1e-12);
    }
}

TEST_CASE("Si and Ci against the asymptotic oracle up to 1e4") {
    for (double y = 50.0; y <= 1e4; y *= 1.37) {
        const auto [si, ci] = si_ci_asymptotic(y);
        CHECK(std::abs(sine_integral(y) - si) < 1e-12);
        CHECK(std::abs(cosine_integral(y) - ci) < 1e-12);
    }
}

TEST_CASE("continuity across the algorithm switch") {
    for (double y : {3.9, 4.0, 4.1, 19.9, 20.0, 20.1}) {
        const double lo = std::nextafter(y, 0.0);
        CHECK(std::abs(sine_integral(y) - sine_integral(lo)) < 1e-12);
        CHECK(std::abs(cosine_integral(y) - cosine_integral(lo)) < 1e-12);
        CHECK(std::abs(sine_integral(y) - reference::sine_integral_series(y)) < 1e-12);
    }
}

TEST_CASE("Si monotone on [0, pi], first zero of Ci in (0.6, 0.7)") {
    double prev = sine_integral(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double v = sine_integral(kPi * i / 1000);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(cosine_integral(0.6) < 0.0);
    CHECK(cosine_integral(0.7) > 0.0);
}

TEST_CASE("si conventions") {
    CHECK(sine_integral_convention(2.0, SiConvention::Plain) == sine_integral(2.0));
    CHECK(sine_integral_convention(2.0, SiConvention::Shifted) == doctest::Approx(sine_integral(2.0) - kPi / 2));
    CHECK(std::string(to_string(SiConvention::Shifted)) == "shifted");
}

TEST_CASE("envelopes at special points") {
    CHECK(envelope_A(0.0) == 0.0);
    CHECK(envelope_B(0.0) == 0.0);
    CHECK(envelope_A_tilde(0.0) == 1.0);
    CHECK(envelope_B_tilde(0.0) == 1.0);
    CHECK(envelope_A(kPi) == doctest::Approx(-kPi).epsilon(1e-14));
    CHECK(envelope_A(kPi / 2) == doctest::Approx(kPi * kPi / 4 - 1).epsilon(1e-14));
    const double u = 1e-4;
    CHECK(std::abs(envelope_A(u) / (u * u * u) - 2.0 / 3.0) < 1e-8);
    CHECK(std::abs(envelope_B(u) / (u * u * u) + 1.0 / 3.0) < 1e-8);
    CHECK_THROWS_AS(envelope_A(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("envelopes: Taylor branch matches the literal formula in extended precision") {
    for (double u : {1e-6, 1e-4, 3e-3, 9.9e-3, 1e-2, 0.5, 1.0, 7.0, 300.0}) {
        const Real U(u);
        const Real A = U * cos(U) + (U * U - 1) * sin(U);
        const Real At = U * sin(U) - (U * U - 1) * cos(U);
        const Real B = U * cos(U) - sin(U);
        const Real Bt = U * sin(U) + cos(U);
        CHECK(std::abs(envelope_A(u) - static_cast<double>(A)) <= 1e-10 * std::abs(static_cast<double>(A)));
        CHECK(std::abs(envelope_B(u) - static_cast<double>(B)) <= 1e-10 * std::abs(static_cast<double>(B)));
        CHECK(std::abs(envelope_A_tilde(u) - static_cast<double>(At)) <= 1e-10 * std::abs(static_cast<double>(At)));
        CHECK(std::abs(envelope_B_tilde(u) - static_cast<double>(Bt)) <= 1e-10 * std::abs(static_cast<double>(Bt)));
    }
}

TEST_CASE("envelope parity") {
    for (double u : {1e-3, 0.3, 2.0, 11.0}) {
        CHECK(envelope_A(-u) == doctest::Approx(-envelope_A(u)));
        CHECK(envelope_B(-u) == doctest::Approx(-envelope_B(u)));
        CHECK(envelope_A_tilde(-u) == doctest::Approx(envelope_A_tilde(u)));
        CHECK(envelope_B_tilde(-u) == doctest::Approx(envelope_B_tilde(u)));
    }
}

TEST_CASE("geometry scales") {
    const auto s = GeometryScales::from_separation_and_plate(3.0, 4.0);
    CHECK(s.z == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(GeometryScales::from_separation_and_plate(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(GeometryScales::from_separation_and_plate(1.0, -1.0), DomainError);
}

TEST_CASE("image envelopes C and D") {
    const auto s = GeometryScales::from_separation_and_plate(2.0, 3.0);
    CHECK(envelope_C(0.0, s) == 0.0);
    CHECK(envelope_D(0.0, s) == 0.0);
    CHECK(envelope_C_tilde(0.0, s) == doctest::Approx(-(4.0 - 4.5)));
    CHECK(envelope_D_tilde(0.0, s) == doctest::Approx(-(18.0 - 4.0)));

    const auto one = GeometryScales::from_separation_and_plate(1.0, 1.0);
    const Real x = 1, y = 1, z = sqrt(Real(2)), u = z;
    const Real C = (y * y / 2 - z * z) * u * cos(u) + (x * x + y * y / 2 * (u * u - 1)) * sin(u);
    const Real Ct = (y * y / 2 - z * z) * u * sin(u) - (x * x + y * y / 2 * (u * u - 1)) * cos(u);
    const Real D = (x * x - 2 * y * y) * u * cos(u) + (2 * y * y + x * x * (u * u - 1)) * sin(u);
    const Real Dt = (x * x - 2 * y * y) * u * sin(u) - (2 * y * y + x * x * (u * u - 1)) * cos(u);
    CHECK(std::abs(envelope_C(one.z, one) - static_cast<double>(C)) < 1e-13);
    CHECK(std::abs(envelope_C_tilde(one.z, one) - static_cast<double>(Ct)) < 1e-13);
    CHECK(std::abs(envelope_D(one.z, one) - static_cast<double>(D)) < 1e-13);
    CHECK(std::abs(envelope_D_tilde(one.z, one) - static_cast<double>(Dt)) < 1e-13);
}
