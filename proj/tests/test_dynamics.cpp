#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twoatom/dynamics.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/reference.hpp"

using namespace twoatom;

namespace {

double max_diff(const Matrix4c& a, const Matrix4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

MarkovCoefficients free_coeffs(double gamma0) { return {gamma0, 0.0, 0.0, 0.0, true}; }

SystemConfig plate_config(double x, double y, Axis axis, double coupling) {
    SystemConfig c;
    c.separation_x = x;
    c.plate_distance_y = y;
    c.coupling_ratio = coupling;
    c.orientation_1 = c.orientation_2 = DipoleOrientation::along(axis);
    return c;
}

}  // namespace

TEST_CASE("pure state construction") {
    const auto s = PureBipartiteState::bell_like(0.3);
    CHECK(s.norm_squared() == doctest::Approx(1.0));
    CHECK(s.is_x_shaped());
    CHECK_THROWS_AS(PureBipartiteState::bell_like(-0.1), DomainError);
    PureBipartiteState bad{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(PureBipartiteState::normalized(0.0, 0.0, 0.0, 0.0), DomainError);
    const auto n = PureBipartiteState::normalized(1.0, cplx(0, 1), 1.0, 1.0);
    CHECK(n.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("factors vanish at t = 0 and follow the degenerate limits") {
    const MarkovCoefficients c{1.0, 0.4, 0.1, 0.2, true};
    const auto f0 = evolution_factors(c, 0.0);
    CHECK(f0.F == 0.0);
    CHECK(f0.G == 0.0);
    CHECK(std::abs(f0.Fp) == 0.0);
    CHECK(std::abs(f0.Gp) == 0.0);
    CHECK(f0.Gamma11 == 0.0);

    const auto f = evolution_factors(c, 1.5);
    CHECK(f.Gamma11 == 1.5);
    CHECK(f.gamma11 == 0.1 * 1.5);

    const MarkovCoefficients sym{0.7, 0.0, 0.0, 0.0, true};
    const auto s = evolution_factors(sym, 2.0);
    const double expect = (1.0 - std::exp(-2 * 0.7 * 2.0)) / 2.0;
    CHECK(s.F == doctest::Approx(expect).epsilon(1e-14));
    CHECK(s.G == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(s.Fp - cplx(s.F)) < 1e-15);
    CHECK(std::abs(s.Gp - cplx(s.G)) < 1e-15);

    // a11 + a12 = 0: F grows linearly.
    const MarkovCoefficients edge{0.5, -0.5, 0.0, 0.0, true};
    CHECK(evolution_factors(edge, 3.0).F == doctest::Approx(1.0 * 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(evolution_factors(c, -1.0), DomainError);
}

TEST_CASE("exponential integral factor near zero exponent") {
    CHECK(exponential_integral_factor(cplx(0.0), 2.0) == cplx(2.0));
    const cplx k(1e-9, 2e-9);
    const cplx ref = 2.0 - k * 2.0 + k * k * 8.0 / 6.0;
    CHECK(std::abs(exponential_integral_factor(k, 2.0) - ref) < 1e-15);
}

TEST_CASE("factors against quadrature of their defining integrals") {
    const MarkovCoefficients c{1.0, 0.4, 0.3, 0.2, true};
    const auto f = evolution_factors(c, 1.0);
    const auto q = reference::factors_by_quadrature(c, 1.0);
    CHECK(std::abs(f.F - q.F) < 1e-10);
    CHECK(std::abs(f.G - q.G) < 1e-10);
    CHECK(std::abs(f.Fp - q.Fp) < 1e-10);
    CHECK(std::abs(f.Gp - q.Gp) < 1e-10);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double a11 = 0.5 + std::abs(u(rng));
        const MarkovCoefficients r{a11, a11 * u(rng), u(rng), u(rng), true};
        const double t = 3.0 * std::abs(u(rng));
        const auto fr = evolution_factors(r, t);
        const auto qr = reference::factors_by_quadrature(r, t);
        CHECK(std::abs(fr.F - qr.F) < 1e-10);
        CHECK(std::abs(fr.G - qr.G) < 1e-10);
        CHECK(std::abs(fr.Fp - qr.Fp) < 1e-10);
        CHECK(std::abs(fr.Gp - qr.Gp) < 1e-10);
    }
}

TEST_CASE("density matrix at t = 0 is the projector") {
    const auto s = PureBipartiteState::normalized(cplx(0.3, 0.1), cplx(0.2, -0.4), 0.5, cplx(0, 0.6));
    const auto rho = density_matrix(s, MarkovCoefficients{1e-3, 2e-4, 1e-4, -3e-4, true}, 0.0);
    CHECK(max_diff(rho.matrix(), s.projector()) == 0.0);
}

TEST_CASE("fully excited state in free space") {
    const auto s = PureBipartiteState::bell_like(1.0);
    const double g = 1e-2;
    for (double t : {0.5, 10.0, 70.0}) {
        const auto rho = density_matrix(s, free_coeffs(g), t);
        CHECK(rho(1, 1).real() == doctest::Approx(std::exp(-4 * g * t)).epsilon(1e-14));
        CHECK(std::abs(rho(4, 1)) == 0.0);
    }
}

TEST_CASE("long-time limit is the ground state") {
    const MarkovCoefficients c{1e-3, 3e-4, 1e-4, 2e-4, true};
    const auto rho = density_matrix(PureBipartiteState::bell_like(0.5), c, 50.0 / c.a11);
    CHECK(rho(4, 4).real() >= 1.0 - 1e-8);
    const auto ode = integrate_master_equation(PureBipartiteState::bell_like(0.5), c, 50.0 / c.a11, 20000);
    CHECK(ode(4, 4).real() >= 1.0 - 1e-8);
}

TEST_CASE("ODE oracle: zero coefficients give free phases only") {
    const auto s = PureBipartiteState::normalized(0.5, cplx(0, 0.5), 0.5, 0.5);
    const MarkovCoefficients zero{};
    const double t = 2.3;
    const auto rho = integrate_master_equation(s, zero, t, 10);
    // lab frame: rho_kl ~ exp(-i (E_k - E_l) t), E = (1, 0, 0, -1)
    const double e[4] = {1.0, 0.0, 0.0, -1.0};
    const Matrix4c p = s.projector();
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            CHECK(std::abs(rho.matrix()(k, l) - p(k, l) * std::exp(cplx(0, -(e[k] - e[l]) * t))) < 1e-15);
        }
    }
}

TEST_CASE("ODE oracle agrees with the closed form") {
    const double g = 1e-4;
    const auto s = PureBipartiteState::bell_like(0.5);
    const auto ode = integrate_master_equation(s, free_coeffs(g), 1.0 / g, 10000);
    const auto cf = density_matrix(s, free_coeffs(g), 1.0 / g);
    CHECK(max_diff(ode.matrix(), cf.matrix()) < 1e-8);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double a11 = 0.1 + u(rng);
        const MarkovCoefficients c{a11, a11 * (2 * u(rng) - 1), u(rng) - 0.5, u(rng) - 0.5, true};
        const auto st = PureBipartiteState::normalized(cplx(u(rng), u(rng)), cplx(u(rng), -u(rng)), u(rng),
                                                       cplx(-u(rng), u(rng)));
        const double t = 2.0 * u(rng);
        const auto a = integrate_master_equation(st, c, t, 4000);
        const auto b = density_matrix(st, c, t);
        CHECK(max_diff(a.matrix(), b.matrix()) < 1e-7);
    }
}

TEST_CASE("ODE oracle rejects an unconverged step count") {
    const MarkovCoefficients c{1.0, 0.5, 0.3, 0.2, true};
    CHECK_THROWS_AS(integrate_master_equation(PureBipartiteState::bell_like(0.5), c, 20.0, 4), ConvergenceError);
    CHECK_THROWS_AS(integrate_master_equation(PureBipartiteState::bell_like(0.5), c, 1.0, 0), DomainError);
}

TEST_CASE("independent channels keep the single-excitation populations equal") {
    const MarkovCoefficients c{2e-3, 0.0, 5e-4, 0.0, true};
    for (double t : {10.0, 300.0, 1000.0}) {
        const auto rho = density_matrix(PureBipartiteState::bell_like(0.5), c, t);
        CHECK(std::abs(rho(2, 2) - rho(3, 3)) < 1e-15);
    }
}

TEST_CASE("X structure, trace and Hermiticity along plate trajectories") {
    for (Axis axis : kAxes) {
        const auto cfg = plate_config(2.0, 3.0, axis, 1e-3);
        const auto coeffs = markov_coefficients(cfg);
        const auto traj = trajectory(PureBipartiteState::bell_like(0.7), coeffs, 5.0 / coeffs.a11, 64);
        CHECK(traj.points.size() == 64);
        double prev = 2.0;
        for (const auto& pt : traj.points) {
            CHECK(pt.rho.off_x_magnitude() < 1e-14);
            CHECK(pt.rho.trace_error() < 1e-10);
            CHECK(pt.rho.hermiticity_error() < 1e-12);
            CHECK(pt.rho(1, 1).real() <= prev);
            prev = pt.rho(1, 1).real();
        }
    }
}

TEST_CASE("trajectory endpoints") {
    const MarkovCoefficients c{1e-3, 2e-4, 0.0, 1e-4, true};
    const auto s = PureBipartiteState::bell_like(0.5);
    const auto traj = trajectory(s, c, 400.0, 2);
    CHECK(max_diff(traj.points.front().rho.matrix(), density_matrix(s, c, 0.0).matrix()) == 0.0);
    CHECK(max_diff(traj.points.back().rho.matrix(), density_matrix(s, c, 400.0).matrix()) == 0.0);
    CHECK_THROWS_AS(trajectory(s, c, 400.0, 1), DomainError);
    CHECK_THROWS_AS(trajectory(s, c, 0.0, 5), DomainError);
}

TEST_CASE("unequal orientations are rejected by the dynamics") {
    auto cfg = plate_config(2.0, 3.0, Axis::X, 1e-4);
    cfg.orientation_2 = DipoleOrientation::along(Axis::Y);
    CHECK_THROWS_AS(density_matrix(PureBipartiteState::bell_like(0.5), cfg, 1.0), DomainError);
    CHECK_THROWS_AS(density_matrix(PureBipartiteState::bell_like(0.5), markov_coefficients(cfg), 1.0), DomainError);
}

TEST_CASE("physicality checks") {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    DensityMatrix4 ok(m);
    CHECK_NOTHROW(ok.require_physical());
    m(0, 3) = 0.1;
    CHECK_THROWS_AS(DensityMatrix4(m).require_physical(), DomainError);
    m(0, 3) = 0.0;
    m(3, 3) = 0.6;
    CHECK_THROWS_AS(DensityMatrix4(m).require_physical(), DomainError);
}
