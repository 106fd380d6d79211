// kernels.hpp - Markovian environment coefficients a11, a12, c11, c12 for two
// dipoles in free space or in front of a perfectly conducting plate.
//
// Geometry: the plate is the plane y = 0, atom 1 sits at (0, d, L) and atom 2
// at (0, d, 0). Axis X is parallel to the plate and transverse to the
// separation, Y is the plate normal, Z runs along the separation.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "twoatom/special_functions.hpp"

namespace twoatom {

enum class Axis { X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

class DipoleOrientation {
public:
    // Throws DomainError unless |r| = 1 within 1e-12.
    static DipoleOrientation from_components(double rx, double ry, double rz);
    // Normalizes an arbitrary non-zero direction.
    static DipoleOrientation from_direction(double rx, double ry, double rz);

    static DipoleOrientation along(Axis axis);
    // (1, 1, 1)/sqrt(3)
    static DipoleOrientation isotropic();

    double operator[](Axis axis) const { return r_[static_cast<int>(axis) - 1]; }
    const std::array<double, 3>& components() const { return r_; }

    bool operator==(const DipoleOrientation&) const = default;

private:
    explicit DipoleOrientation(std::array<double, 3> r) : r_(r) {}
    std::array<double, 3> r_;
};

enum class Environment { FreeSpace, ConductingPlate };

const char* to_string(Environment env);

struct SystemConfig {
    double separation_x = 2.0;      // L w0
    double plate_distance_y = 4.0;  // 2 d w0, ignored in free space
    double coupling_ratio = 1e-4;   // gamma0 / w0
    DipoleOrientation orientation_1 = DipoleOrientation::along(Axis::Y);
    DipoleOrientation orientation_2 = DipoleOrientation::along(Axis::Y);
    Environment environment = Environment::ConductingPlate;
    double entanglement_p = 0.5;
    special::SiConvention si_convention = special::SiConvention::Shifted;

    // Throws DomainError on hard violations; returns soft warnings (the
    // Markov-validity guard x, y >= 1).
    std::vector<std::string> validate() const;

    bool equal_orientations() const { return orientation_1 == orientation_2; }
    double d_over_l() const { return plate_distance_y / (2.0 * separation_x); }
};

// All rates and shifts in units of w0.
struct MarkovCoefficients {
    double a11 = 0.0;
    double a12 = 0.0;
    double c11 = 0.0;
    double c12 = 0.0;
    // False when computed for two different dipole orientations; the closed
    // form dynamics refuses such coefficient sets.
    bool symmetric_pair = true;

    // Kossakowski matrix [[a11, a12], [a12, a11]] positive semidefinite;
    // otherwise the generated states leave the physical set.
    bool positive_generator() const { return a11 >= (a12 < 0.0 ? -a12 : a12); }

    MarkovCoefficients scaled(double factor) const {
        return {a11 * factor, a12 * factor, c11 * factor, c12 * factor, symmetric_pair};
    }
};

namespace blocks {

// Free-space pair terms, argument x = L w0 > 0.
double f12(double x, Axis m);
double g12(double x, Axis m);

// Self image terms, argument y = 2 d w0 > 0.
double b_ii(double y, Axis m);
double h_ii(double y, Axis m, special::SiConvention convention = special::SiConvention::Shifted);

// Cross image terms, evaluated at u = z.
double b12(const special::GeometryScales& s, Axis m);
double h12(const special::GeometryScales& s, Axis m);

}  // namespace blocks

// sum_m r_m^2 b^{ii}_m(y) and sum_m r_m^2 h^{ii}_m(y).
double weighted_b_ii(const DipoleOrientation& r, double y);
double weighted_h_ii(const DipoleOrientation& r, double y, special::SiConvention convention);

MarkovCoefficients markov_coefficients(const SystemConfig& config);

}  // namespace twoatom
