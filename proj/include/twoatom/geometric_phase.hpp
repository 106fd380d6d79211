// geometric_phase.hpp - geometric phase of the dominant eigenvector of rho(t)
// for states sqrt(p)|11> + sqrt(1-p)|00>, over N quasi-cycles of length pi
// (w0 = 1).
#pragma once

#include <vector>

#include "twoatom/dynamics.hpp"
#include "twoatom/simd/batch.hpp"

namespace twoatom {

inline constexpr double kQuasiCycle = special::kPi;

struct GpResult {
    double phi_exact = 0.0;
    double phi_unitary = 0.0;
    double delta_phi = 0.0;
    double ratio_metric = 0.0;  // 1 - phi_exact / phi_unitary, NaN when phi_unitary = 0
    int windings = 0;
};

// Larger eigenvalue of the {|11>, |00>} block and the matching eigenvector
// (-(rho44 - l)|11> + rho41|00>) / norm, stored as {|11>, |00>} amplitudes.
struct SpectralPoint {
    double lambda_plus;
    double lambda_minus;
    double u;  // -(rho44 - l) >= 0
    cplx v;    // rho41 / norm
};

SpectralPoint spectral_point(const DensityMatrix4& rho);

double unitary_gp(double p, int windings);

inline constexpr int kDefaultGpSteps = 4096;

// Kinematic definition: arg<Psi(0)|Psi(N pi)> minus the discretized
// connection sum_k arg<Psi_k|Psi_k+1>. The sum is evaluated with n, 2n and 4n
// steps per winding and Richardson-extrapolated; ConvergenceError when the
// two extrapolants differ by 1e-8 or more. DomainError for states outside the
// sqrt(p)|11> + sqrt(1-p)|00> family, and when the two block eigenvalues come
// within 1e-10 of each other along the path.
GpResult exact_gp_kinematic(const PureBipartiteState& state, const MarkovCoefficients& coeffs, int windings,
                            int steps_per_winding = kDefaultGpSteps);

enum class IntegrandVariant { Derived, Printed };

const char* to_string(IntegrandVariant v);

// Closed integral over [0, N pi]:
//   derived: arg<Psi(0)|Psi(N pi)> - 2 (1 + c11) int |rho41|^2 / ((rho44 - l)^2 + |rho41|^2)
//   printed: -(1 + c11) int |rho41| / ((rho44 - l)^2 + |rho41|^2)
double exact_gp_closed_integral(const PureBipartiteState& state, const MarkovCoefficients& coeffs, int windings,
                                double quadrature_tol = 1e-10, IntegrandVariant variant = IntegrandVariant::Derived);

// Closed integral for every N = 1..max_windings in one pass, with fixed
// Gauss-Legendre panels whose integrand values come from the batch kernels.
std::vector<double> closed_integral_by_winding(const PureBipartiteState& state, const MarkovCoefficients& coeffs,
                                               int max_windings, IntegrandVariant variant = IntegrandVariant::Derived,
                                               int panels_per_winding = 64);

// Weak-coupling expansion, literal bracket, times N.
double gp_second_order(double p, const MarkovCoefficients& coeffs, int windings);

// First-order correction per winding; DomainError at p = 0.
double gp_first_order_correction(double p, const SystemConfig& config);

// Entanglement parameter maximizing |first-order correction|.
double p_max_correction(const SystemConfig& config);

// Magnitude of that maximal correction, (2 pi a11 + c11)^2 / (4 a11).
double delta_phi_max(const MarkovCoefficients& coeffs);

}  // namespace twoatom
