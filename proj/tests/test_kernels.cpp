#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twoatom/errors.hpp"
#include "twoatom/kernels.hpp"
#include "twoatom/reference.hpp"

using namespace twoatom;
using special::kPi;

namespace {

SystemConfig plate(double x, double y, DipoleOrientation r, double coupling = 1e-4) {
    SystemConfig c;
    c.separation_x = x;
    c.plate_distance_y = y;
    c.coupling_ratio = coupling;
    c.orientation_1 = r;
    c.orientation_2 = r;
    c.environment = Environment::ConductingPlate;
    return c;
}

SystemConfig free_space(double x, DipoleOrientation r, double coupling = 1e-4) {
    auto c = plate(x, 4.0, r, coupling);
    c.environment = Environment::FreeSpace;
    return c;
}

void check_close(const MarkovCoefficients& a, const MarkovCoefficients& b, double tol) {
    CHECK(std::abs(a.a11 - b.a11) < tol);
    CHECK(std::abs(a.a12 - b.a12) < tol);
    CHECK(std::abs(a.c11 - b.c11) < tol);
    CHECK(std::abs(a.c12 - b.c12) < tol);
}

}  // namespace

TEST_CASE("orientation validation") {
    CHECK_NOTHROW(DipoleOrientation::from_components(0.6, 0.8, 0.0));
    CHECK_THROWS_AS(DipoleOrientation::from_components(0.6, 0.7, 0.0), DomainError);
    CHECK_THROWS_AS(DipoleOrientation::from_direction(0.0, 0.0, 0.0), DomainError);
    const auto iso = DipoleOrientation::isotropic();
    CHECK(iso[Axis::X] == doctest::Approx(1 / std::sqrt(3.0)));
    const auto d = DipoleOrientation::from_direction(2.0, 0.0, 0.0);
    CHECK(d == DipoleOrientation::along(Axis::X));
}

TEST_CASE("config validation") {
    auto c = plate(2.0, 2.0, DipoleOrientation::along(Axis::Y));
    CHECK(c.validate().empty());
    c.separation_x = 0.5;
    CHECK(c.validate().size() == 1);
    c.coupling_ratio = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.coupling_ratio = 1e-4;
    c.entanglement_p = 1.5;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("free-space pair blocks") {
    CHECK(blocks::g12(kPi, Axis::Z) == doctest::Approx(-1.0 / (kPi * kPi * kPi)).epsilon(1e-14));
    CHECK(std::abs(blocks::f12(1e-4, Axis::Z) - 1.0 / 3.0) < 1e-8);
    for (Axis m : kAxes) {
        CHECK(std::abs(blocks::f12(1e3, m)) < 1e-2);
        CHECK(std::abs(blocks::g12(1e3, m)) < 1e-2);
    }
    CHECK_THROWS_AS(blocks::f12(0.0, Axis::X), DomainError);
    CHECK_THROWS_AS(blocks::g12(-1.0, Axis::X), DomainError);
}

TEST_CASE("self image blocks") {
    CHECK(blocks::b_ii(kPi, Axis::Y) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-14));
    for (Axis m : kAxes) {
        CHECK(std::abs(blocks::b_ii(1e3, m)) < 1e-2);
    }
    CHECK(std::abs(blocks::h_ii(5.0, Axis::X) - reference::h_ii_direct(5.0, Axis::X)) < 1e-11);
    CHECK(std::abs(blocks::h_ii(5.0, Axis::X, special::SiConvention::Plain) -
                   reference::h_ii_direct(5.0, Axis::X, special::SiConvention::Plain)) < 1e-11);
    CHECK_THROWS_AS(blocks::b_ii(0.0, Axis::X), DomainError);
    CHECK_THROWS_AS(blocks::h_ii(-3.0, Axis::Y), DomainError);
}

TEST_CASE("cross image blocks") {
    const auto s = special::GeometryScales::from_separation_and_plate(3.0, 4.0);
    CHECK(blocks::b12(s, Axis::X) == doctest::Approx(special::envelope_A(5.0) / 250.0).epsilon(1e-14));
    CHECK(std::abs(blocks::h12(s, Axis::Y) - reference::h12_direct(3.0, 4.0, Axis::Y)) < 1e-11);
    const auto far = special::GeometryScales::from_separation_and_plate(2.0, 1e3);
    for (Axis m : kAxes) {
        CHECK(std::abs(blocks::b12(far, m)) < 1e-2);
    }
    special::GeometryScales bad{3.0, 4.0, 6.0};
    CHECK_THROWS_AS(blocks::b12(bad, Axis::X), DomainError);
}

TEST_CASE("all blocks against the extended-precision oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1.0, 30.0);
    for (int i = 0; i < 40; ++i) {
        const double x = u(rng), y = u(rng);
        const auto s = special::GeometryScales::from_separation_and_plate(x, y);
        for (Axis m : kAxes) {
            CHECK(std::abs(blocks::f12(x, m) - reference::f12_direct(x, m)) < 1e-11);
            CHECK(std::abs(blocks::g12(x, m) - reference::g12_direct(x, m)) < 1e-11);
            CHECK(std::abs(blocks::b_ii(y, m) - reference::b_ii_direct(y, m)) < 1e-11);
            CHECK(std::abs(blocks::h_ii(y, m) - reference::h_ii_direct(y, m)) < 1e-11);
            CHECK(std::abs(blocks::b12(s, m) - reference::b12_direct(x, y, m)) < 1e-11);
            CHECK(std::abs(blocks::h12(s, m) - reference::h12_direct(x, y, m)) < 1e-11);
        }
    }
}

TEST_CASE("free-space coefficients") {
    for (auto r : {DipoleOrientation::along(Axis::X), DipoleOrientation::along(Axis::Z), DipoleOrientation::isotropic()}) {
        const auto c = markov_coefficients(free_space(2.0, r, 3e-5));
        CHECK(c.a11 == doctest::Approx(3e-5).epsilon(1e-14));
        CHECK(c.c11 == 0.0);
    }
    const auto far = markov_coefficients(free_space(1e3, DipoleOrientation::along(Axis::Y), 1.0));
    CHECK(std::abs(far.a12) < 1e-2);
    CHECK(std::abs(far.c12) < 1e-2);
    const auto far_plate = markov_coefficients(plate(1e3, 2.0, DipoleOrientation::along(Axis::Y), 1.0));
    CHECK(std::abs(far_plate.a12) < 1e-2);
}

TEST_CASE("plate coefficients against the hand-summed oracle") {
    for (auto r : {DipoleOrientation::along(Axis::Y), DipoleOrientation::along(Axis::X), DipoleOrientation::isotropic(),
                   DipoleOrientation::from_components(0.6, 0.0, 0.8)}) {
        const auto cfg = plate(2.0, 2.0, r, 1.0);
        check_close(markov_coefficients(cfg), reference::markov_coefficients_direct(cfg), 1e-11);
    }
}

TEST_CASE("linearity in the coupling") {
    const auto a = markov_coefficients(plate(2.5, 3.5, DipoleOrientation::isotropic(), 1e-4));
    const auto b = markov_coefficients(plate(2.5, 3.5, DipoleOrientation::isotropic(), 2e-4));
    CHECK(b.a11 == 2 * a.a11);
    CHECK(b.a12 == 2 * a.a12);
    CHECK(b.c11 == 2 * a.c11);
    CHECK(b.c12 == 2 * a.c12);
}

TEST_CASE("plate removal limit") {
    for (Axis m : kAxes) {
        const auto r = DipoleOrientation::along(m);
        const auto p = markov_coefficients(plate(2.0, 40.0, r));
        const auto f = markov_coefficients(free_space(2.0, r));
        CHECK(std::abs(p.a11 - f.a11) / f.a11 < 5e-2);
    }
}

TEST_CASE("swap symmetry for distinct orientations") {
    auto cfg = plate(2.0, 3.0, DipoleOrientation::along(Axis::X));
    cfg.orientation_2 = DipoleOrientation::from_components(0.6, 0.8, 0.0);
    auto swapped = cfg;
    std::swap(swapped.orientation_1, swapped.orientation_2);
    const auto a = markov_coefficients(cfg);
    const auto b = markov_coefficients(swapped);
    CHECK(a.a12 == doctest::Approx(b.a12).epsilon(1e-15));
    CHECK(a.c12 == doctest::Approx(b.c12).epsilon(1e-15));
    CHECK_FALSE(a.symmetric_pair);
}

TEST_CASE("orientation decomposition") {
    const auto r = DipoleOrientation::from_components(0.6, 0.0, 0.8);
    const auto c = markov_coefficients(plate(2.0, 3.0, r, 1.0));
    double a12 = 0.0;
    for (Axis m : kAxes) {
        const auto s = special::GeometryScales::from_separation_and_plate(2.0, 3.0);
        a12 += r[m] * r[m] * 3.0 * (blocks::f12(2.0, m) - blocks::b12(s, m));
    }
    CHECK(c.a12 == doctest::Approx(a12).epsilon(1e-14));
}
