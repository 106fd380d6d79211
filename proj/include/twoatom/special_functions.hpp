// special_functions.hpp - sine/cosine integrals and the oscillatory envelopes
// the vacuum kernels are assembled from.
#pragma once

namespace twoatom::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Si(y) = int_0^y sin(u)/u du, y >= 0.
double sine_integral(double y);

// Ci(y) = gamma_E + ln y + int_0^y (cos u - 1)/u du, y > 0.
double cosine_integral(double y);

struct SiCi {
    double si;
    double ci;
};

// Both integrals from one evaluation; y > 0.
SiCi sine_cosine_integrals(double y);

// Which sine integral enters the frequency shift h^{ii}. Shifted is
// si(y) = Si(y) - pi/2, the convention that reproduces the 1/y^3 near-plate
// law and makes the plate terms vanish at large y.
enum class SiConvention { Shifted, Plain };

double sine_integral_convention(double y, SiConvention convention);

const char* to_string(SiConvention convention);

// Envelope functions. Each is a combination of u cos u, sin u, u^2 sin u (odd
// family) or u sin u, cos u, u^2 cos u (even family). Below kTaylorSwitch the
// combination is summed as a Taylor series so that ratios like A(u)/u^3 stay
// accurate where the literal formula cancels.
inline constexpr double kTaylorSwitch = 1e-2;

double envelope_A(double u);        // u cos u + (u^2 - 1) sin u
double envelope_A_tilde(double u);  // u sin u - (u^2 - 1) cos u
double envelope_B(double u);        // u cos u - sin u
double envelope_B_tilde(double u);  // u sin u + cos u

// Dimensionless geometry: x = L w0, y = 2 d w0, z = sqrt(x^2 + y^2).
struct GeometryScales {
    double x;
    double y;
    double z;

    // Validates x > 0, y > 0 (finite) and fills z.
    static GeometryScales from_separation_and_plate(double x, double y);
    // DomainError unless x, y > 0 and z = hypot(x, y).
    void validate() const;
};

double envelope_C(double u, const GeometryScales& s);
double envelope_C_tilde(double u, const GeometryScales& s);
double envelope_D(double u, const GeometryScales& s);
double envelope_D_tilde(double u, const GeometryScales& s);

// Generic building block shared by the envelopes.
//   odd:  alpha * u cos u + beta * sin u + gamma * u^2 sin u
//   even: alpha * u sin u + beta * cos u + gamma * u^2 cos u
struct TrigCombination {
    double alpha;
    double beta;
    double gamma;

    double odd(double u) const;
    double even(double u) const;
};

}  // namespace twoatom::special
