#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twoatom/errors.hpp"
#include "twoatom/geometric_phase.hpp"

using namespace twoatom;
using special::kPi;

namespace {

SystemConfig config(Environment env, Axis axis, double coupling, double x = 2.0, double y = 2.0) {
    SystemConfig c;
    c.environment = env;
    c.separation_x = x;
    c.plate_distance_y = y;
    c.coupling_ratio = coupling;
    c.orientation_1 = c.orientation_2 = DipoleOrientation::along(axis);
    return c;
}

MarkovCoefficients free_coeffs(double g) { return {g, 0.0, 0.0, 0.0, true}; }

}  // namespace

TEST_CASE("unitary phase") {
    CHECK(unitary_gp(1.0, 3) == 0.0);
    CHECK(unitary_gp(0.5, 1) == doctest::Approx(-kPi));
    CHECK(unitary_gp(0.5, 4) == doctest::Approx(-4 * kPi));
    CHECK_THROWS_AS(unitary_gp(1.2, 1), DomainError);
    CHECK_THROWS_AS(unitary_gp(0.5, 0), DomainError);
}

TEST_CASE("spectral point at t = 0") {
    const auto rho = density_matrix(PureBipartiteState::bell_like(0.3), free_coeffs(1e-3), 0.0);
    const auto sp = spectral_point(rho);
    CHECK(sp.lambda_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sp.lambda_minus) < 1e-12);
    CHECK(sp.u * sp.u + std::norm(sp.v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kinematic route: limits") {
    const auto bell = PureBipartiteState::bell_like(0.5);
    const auto r = exact_gp_kinematic(bell, free_coeffs(1e-12), 1);
    CHECK(std::abs(r.phi_exact + kPi) < 1e-6);
    CHECK(r.delta_phi == r.phi_exact - r.phi_unitary);

    const auto excited = exact_gp_kinematic(PureBipartiteState::bell_like(1.0), free_coeffs(1e-4), 3);
    CHECK(excited.phi_exact == 0.0);

    CHECK_THROWS_AS(exact_gp_kinematic(PureBipartiteState::normalized(1.0, 1.0, 0.0, 1.0), free_coeffs(1e-4), 1),
                    DomainError);
    CHECK_THROWS_AS(exact_gp_kinematic(bell, free_coeffs(1e-4), 1, 10), DomainError);
}

TEST_CASE("kinematic route: free-space first-order value") {
    const auto r = exact_gp_kinematic(PureBipartiteState::bell_like(0.5), free_coeffs(1e-5), 1);
    const double expect = -kPi * kPi * 1e-5;
    CHECK(std::abs(r.delta_phi - expect) < 0.05 * std::abs(expect));
}

TEST_CASE("kinematic and closed-integral routes agree") {
    const auto bell = PureBipartiteState::bell_like(0.5);
    const auto coeffs = markov_coefficients(config(Environment::ConductingPlate, Axis::Y, 1e-4));
    const double kin = exact_gp_kinematic(bell, coeffs, 1).phi_exact;
    const double closed = exact_gp_closed_integral(bell, coeffs, 1);
    CHECK(std::abs(kin - closed) < 1e-6);

    for (Environment env : {Environment::FreeSpace, Environment::ConductingPlate}) {
        for (double p : {0.2, 0.5, 0.8}) {
            for (double g : {1e-6, 1e-5, 1e-4}) {
                const auto c = markov_coefficients(config(env, Axis::X, g));
                const auto s = PureBipartiteState::bell_like(p);
                CHECK(std::abs(exact_gp_kinematic(s, c, 1).phi_exact - exact_gp_closed_integral(s, c, 1)) < 1e-6);
            }
        }
    }
}

TEST_CASE("closed integral: limits and variants") {
    CHECK(exact_gp_closed_integral(PureBipartiteState::bell_like(1.0), free_coeffs(1e-4), 2) == 0.0);
    CHECK(std::abs(exact_gp_closed_integral(PureBipartiteState::bell_like(0.5), free_coeffs(1e-12), 1) + kPi) < 1e-6);
    // The printed integrand weights by |rho41| instead of |rho41|^2; at
    // p = 1/2 both start equal so the difference is a small correction.
    const auto c = markov_coefficients(config(Environment::ConductingPlate, Axis::Y, 1e-4));
    const auto s = PureBipartiteState::bell_like(0.5);
    const double derived = exact_gp_closed_integral(s, c, 1, 1e-10, IntegrandVariant::Derived);
    const double printed = exact_gp_closed_integral(s, c, 1, 1e-10, IntegrandVariant::Printed);
    CHECK(std::abs(printed - derived) > 1e-6);
    CHECK(std::abs(printed - derived) < 1e-2);
}

TEST_CASE("batch Gauss-Legendre route matches adaptive quadrature") {
    const auto s = PureBipartiteState::bell_like(0.35);
    const auto c = markov_coefficients(config(Environment::ConductingPlate, Axis::Z, 1e-4, 2.0, 3.0));
    const auto by_n = closed_integral_by_winding(s, c, 5);
    REQUIRE(by_n.size() == 5);
    for (int n = 1; n <= 5; ++n) {
        CHECK(std::abs(by_n[n - 1] - exact_gp_closed_integral(s, c, n)) < 1e-9);
    }
    const auto printed = closed_integral_by_winding(s, c, 2, IntegrandVariant::Printed);
    CHECK(std::abs(printed[1] - exact_gp_closed_integral(s, c, 2, 1e-10, IntegrandVariant::Printed)) < 1e-9);
}

TEST_CASE("winding additivity in the unitary limit") {
    const auto s = PureBipartiteState::bell_like(0.3);
    const double one = exact_gp_kinematic(s, free_coeffs(1e-12), 1).phi_exact;
    for (int n : {2, 5, 10}) {
        CHECK(std::abs(exact_gp_kinematic(s, free_coeffs(1e-12), n).phi_exact - n * one) < 1e-9);
    }
}

TEST_CASE("second-order expansion") {
    const MarkovCoefficients zero{};
    CHECK(gp_second_order(0.3, zero, 2) == doctest::Approx(-2 * kPi * 0.7 * 2));
    // At p = 0 every a-dependent term drops out; c11 stays inside the bracket.
    const MarkovCoefficients c{2e-4, 5e-5, 0.0, 1e-5, true};
    CHECK(gp_second_order(0.0, c, 3) == doctest::Approx(-2 * kPi * 3).epsilon(1e-14));
    const MarkovCoefficients shifted{2e-4, 5e-5, 3e-5, 1e-5, true};
    CHECK(gp_second_order(0.0, shifted, 3) == doctest::Approx(-2 * kPi * 3 * (1 + 3e-5)).epsilon(1e-14));

    const auto s = PureBipartiteState::bell_like(0.5);
    const auto fc = free_coeffs(1e-5);
    const auto exact = exact_gp_kinematic(s, fc, 1);
    const double approx = gp_second_order(0.5, fc, 1) - unitary_gp(0.5, 1);
    CHECK(std::abs(approx - exact.delta_phi) < 0.01 * std::abs(exact.delta_phi));
}

TEST_CASE("first-order correction") {
    auto free = config(Environment::FreeSpace, Axis::Y, 1e-5);
    free.entanglement_p = 0.5;
    CHECK(gp_first_order_correction(0.5, free) == doctest::Approx(-kPi * kPi * 1e-5).epsilon(1e-12));
    CHECK(gp_first_order_correction(1.0, free) == 0.0);
    CHECK_THROWS_AS(gp_first_order_correction(0.0, free), DomainError);

    // Same expression read off the second-order bracket at first order in the
    // coefficients.
    const auto plate = config(Environment::ConductingPlate, Axis::Y, 1e-5, 2.0, 4.0);
    const auto c = markov_coefficients(plate);
    const double p = 0.5;
    const double linear = -2 * kPi * (1 - p) * (c.c11 + 2 * kPi * p * c.a11);
    CHECK(gp_first_order_correction(p, plate) == doctest::Approx(linear).epsilon(1e-12));
}

TEST_CASE("sign and linear growth of the correction") {
    const auto s = PureBipartiteState::bell_like(0.4);
    const auto base = config(Environment::ConductingPlate, Axis::X, 1e-6, 2.0, 3.0);
    const auto c1 = markov_coefficients(base);
    auto scaled = base;
    scaled.coupling_ratio = 1e-5;
    const auto c2 = markov_coefficients(scaled);
    const double d1 = exact_gp_kinematic(s, c1, 1).delta_phi;
    const double d2 = exact_gp_kinematic(s, c2, 1).delta_phi;
    const double sign = -(c1.c11 + 2 * kPi * 0.4 * c1.a11) * 0.6;
    CHECK(d1 * sign > 0.0);
    CHECK(std::abs(std::log10(d2 / d1) - 1.0) < 0.02);
}

TEST_CASE("maximum correction") {
    const auto free = config(Environment::FreeSpace, Axis::Y, 1e-5);
    CHECK(p_max_correction(free) == 0.5);
    const auto fc = markov_coefficients(free);
    CHECK(delta_phi_max(fc) == doctest::Approx(kPi * kPi * fc.a11).epsilon(1e-14));
    CHECK(delta_phi_max(fc) == doctest::Approx(std::abs(gp_first_order_correction(0.5, free))).epsilon(1e-12));

    const auto plate = config(Environment::ConductingPlate, Axis::Y, 1e-5, 2.0, 4.0);
    const double pm = p_max_correction(plate);
    CHECK(std::abs(pm - 0.5) > 1e-6);
    const double h = 1e-4;
    const double f0 = std::abs(gp_first_order_correction(pm, plate));
    CHECK(f0 >= std::abs(gp_first_order_correction(pm - h, plate)));
    CHECK(f0 >= std::abs(gp_first_order_correction(pm + h, plate)));
}
