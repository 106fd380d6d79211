#include "twoatom/kernels.hpp"

#include <cmath>
#include <string>

#include "twoatom/errors.hpp"

namespace twoatom {

using special::GeometryScales;

namespace {

constexpr double kNormTolerance = 1e-12;

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(what) + " must be finite and > 0");
    }
}

}  // namespace

DipoleOrientation DipoleOrientation::from_components(double rx, double ry, double rz) {
    if (!std::isfinite(rx) || !std::isfinite(ry) || !std::isfinite(rz)) {
        throw DomainError("DipoleOrientation: components must be finite");
    }
    const double norm2 = rx * rx + ry * ry + rz * rz;
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw DomainError("DipoleOrientation: components must form a unit vector");
    }
    return DipoleOrientation({rx, ry, rz});
}

DipoleOrientation DipoleOrientation::from_direction(double rx, double ry, double rz) {
    const double norm = std::sqrt(rx * rx + ry * ry + rz * rz);
    if (!std::isfinite(norm) || norm == 0.0) {
        throw DomainError("DipoleOrientation: direction must be finite and non-zero");
    }
    return DipoleOrientation({rx / norm, ry / norm, rz / norm});
}

DipoleOrientation DipoleOrientation::along(Axis axis) {
    std::array<double, 3> r{0.0, 0.0, 0.0};
    r[static_cast<int>(axis) - 1] = 1.0;
    return DipoleOrientation(r);
}

DipoleOrientation DipoleOrientation::isotropic() {
    const double c = 1.0 / std::sqrt(3.0);
    return DipoleOrientation({c, c, c});
}

const char* to_string(Environment env) {
    return env == Environment::FreeSpace ? "free" : "plate";
}

std::vector<std::string> SystemConfig::validate() const {
    require_positive(separation_x, "separation_x");
    require_positive(coupling_ratio, "coupling_ratio");
    if (!std::isfinite(entanglement_p) || entanglement_p < 0.0 || entanglement_p > 1.0) {
        throw DomainError("entanglement_p must lie in [0, 1]");
    }
    std::vector<std::string> warnings;
    if (separation_x < 1.0) {
        warnings.emplace_back("separation_x < 1: outside the Markov-valid regime (L w0 >~ 1)");
    }
    if (environment == Environment::ConductingPlate) {
        require_positive(plate_distance_y, "plate_distance_y");
        if (plate_distance_y < 1.0) {
            warnings.emplace_back("plate_distance_y < 1: outside the Markov-valid regime (2 d w0 >~ 1)");
        }
    }
    return warnings;
}

namespace blocks {

double f12(double x, Axis m) {
    require_positive(x, "f12: x");
    const double x3 = x * x * x;
    if (m == Axis::Z) {
        return -special::envelope_B(x) / x3;
    }
    return 0.5 * special::envelope_A(x) / x3;
}

double g12(double x, Axis m) {
    require_positive(x, "g12: x");
    const double x3 = x * x * x;
    if (m == Axis::Z) {
        return special::envelope_B_tilde(x) / x3;
    }
    return 0.5 * special::envelope_A_tilde(x) / x3;
}

double b_ii(double y, Axis m) {
    require_positive(y, "b_ii: y");
    const double y3 = y * y * y;
    if (m == Axis::Y) {
        return -special::envelope_B(y) / y3;
    }
    return 0.5 * special::envelope_A(y) / y3;
}

double h_ii(double y, Axis m, special::SiConvention convention) {
    require_positive(y, "h_ii: y");
    const double y3 = y * y * y;
    const auto [si_raw, ci] = special::sine_cosine_integrals(y);
    const double si = convention == special::SiConvention::Shifted ? si_raw - special::kPi / 2.0 : si_raw;
    if (m == Axis::Y) {
        return -(ci * special::envelope_B(y) - si * special::envelope_B_tilde(y)) / y3;
    }
    return (y - ci * special::envelope_A(y) - si * special::envelope_A_tilde(y)) / (2.0 * y3);
}

// C and D carry two more powers of length than A, so they are divided by z^5
// in both b12 and h12.
double b12(const GeometryScales& s, Axis m) {
    s.validate();
    const double z = s.z;
    const double z3 = z * z * z;
    const double z5 = z3 * z * z;
    switch (m) {
        case Axis::X:
            return 0.5 * special::envelope_A(z) / z3;
        case Axis::Y:
            return -0.5 * special::envelope_D(z, s) / z5;
        case Axis::Z:
            return special::envelope_C(z, s) / z5;
    }
    return 0.0;
}

double h12(const GeometryScales& s, Axis m) {
    s.validate();
    const double z = s.z;
    const double z3 = z * z * z;
    const double z5 = z3 * z * z;
    switch (m) {
        case Axis::X:
            return 0.5 * special::envelope_A_tilde(z) / z3;
        case Axis::Y:
            return 0.5 * special::envelope_D_tilde(z, s) / z5;
        case Axis::Z:
            return special::envelope_C_tilde(z, s) / z5;
    }
    return 0.0;
}

}  // namespace blocks

double weighted_b_ii(const DipoleOrientation& r, double y) {
    double sum = 0.0;
    for (Axis m : kAxes) {
        if (r[m] != 0.0) {
            sum += r[m] * r[m] * blocks::b_ii(y, m);
        }
    }
    return sum;
}

double weighted_h_ii(const DipoleOrientation& r, double y, special::SiConvention convention) {
    double sum = 0.0;
    for (Axis m : kAxes) {
        if (r[m] != 0.0) {
            sum += r[m] * r[m] * blocks::h_ii(y, m, convention);
        }
    }
    return sum;
}

MarkovCoefficients markov_coefficients(const SystemConfig& config) {
    config.validate();
    const double gamma0 = config.coupling_ratio;
    const double x = config.separation_x;
    const auto& r1 = config.orientation_1;
    const auto& r2 = config.orientation_2;
    const bool plate = config.environment == Environment::ConductingPlate;

    MarkovCoefficients out;
    out.symmetric_pair = config.equal_orientations();

    // f^{ii} = 1 and sum r_m^2 = 1. The free-space Lamb shift is taken as
    // absorbed into w0, so c11 carries only the plate term.
    double self_rate = 1.0;
    double self_shift = 0.0;
    if (plate) {
        self_rate -= 3.0 * weighted_b_ii(r1, config.plate_distance_y);
        self_shift = 3.0 / special::kPi * weighted_h_ii(r1, config.plate_distance_y, config.si_convention);
    }
    out.a11 = gamma0 * self_rate;
    out.c11 = gamma0 * self_shift;

    double pair_rate = 0.0;
    double pair_shift = 0.0;
    for (Axis m : kAxes) {
        const double w = r1[m] * r2[m];
        if (w == 0.0) {
            continue;
        }
        double rate = blocks::f12(x, m);
        double shift = blocks::g12(x, m);
        if (plate) {
            const auto s = GeometryScales::from_separation_and_plate(x, config.plate_distance_y);
            rate -= blocks::b12(s, m);
            shift -= blocks::h12(s, m);
        }
        pair_rate += w * rate;
        pair_shift += w * shift;
    }
    out.a12 = 3.0 * gamma0 * pair_rate;
    out.c12 = 3.0 * gamma0 * pair_shift;
    return out;
}

}  // namespace twoatom
