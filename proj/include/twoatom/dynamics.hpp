// dynamics.hpp - reduced density matrix of the two-atom system.
//
// Basis order is {|11>, |10>, |01>, |00>} (first label: atom 1, 1 = excited).
// Time is measured in units of 1/w0 and the matrix is stored in the
// laboratory picture, i.e. rho41 winds as exp(2 i w0 t).
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "twoatom/kernels.hpp"

namespace twoatom {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

struct PureBipartiteState {
    cplx amp11;
    cplx amp10;
    cplx amp01;
    cplx amp00;

    // sqrt(p)|11> + sqrt(1 - p)|00>
    static PureBipartiteState bell_like(double p);
    // Rescales to unit norm; throws on the zero vector.
    static PureBipartiteState normalized(cplx a11, cplx a10, cplx a01, cplx a00);

    double norm_squared() const;
    // Throws DomainError unless the norm is 1 within 1e-12.
    void validate() const;
    bool is_x_shaped() const { return amp10 == cplx{} && amp01 == cplx{}; }
    Matrix4c projector() const;
};

class DensityMatrix4 {
public:
    DensityMatrix4() : m_(Matrix4c::Zero()) {}
    explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}

    // 1-based element access matching rho_{kl} notation.
    cplx operator()(int k, int l) const { return m_(k - 1, l - 1); }
    cplx& operator()(int k, int l) { return m_(k - 1, l - 1); }

    const Matrix4c& matrix() const { return m_; }

    double trace_error() const;
    double hermiticity_error() const;
    // Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;
    // Largest magnitude outside the diagonal/anti-diagonal.
    double off_x_magnitude() const;

    // Throws DomainError when Hermiticity or trace are violated beyond the
    // given tolerances.
    void require_physical(double hermiticity_tol = 1e-12, double trace_tol = 1e-10) const;

private:
    Matrix4c m_;
};

// Accumulated factors of the closed-form solution at time t.
struct EvolutionFactors {
    double Gamma11 = 0.0;
    double Gamma12 = 0.0;
    double gamma11 = 0.0;
    double gamma12 = 0.0;
    double F = 0.0;
    double G = 0.0;
    cplx Fp;
    cplx Gp;
};

// int_0^t exp(-k t') dt' for complex k, exact for k = 0 and accurate for
// |k t| -> 0.
cplx exponential_integral_factor(cplx k, double t);

EvolutionFactors evolution_factors(const MarkovCoefficients& coeffs, double t);

DensityMatrix4 density_matrix(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t);

// Same, for a prepared set of factors (used by fault-injection tests).
DensityMatrix4 density_matrix_from_factors(const PureBipartiteState& state, const EvolutionFactors& f, double t);

// Fixed-step RK4 integration of the coefficient-form master equation in the
// frame rotating with H_s; the free phases are applied afterwards. Throws
// ConvergenceError when the step-halving (Richardson) estimate exceeds 1e-6.
DensityMatrix4 integrate_master_equation(const PureBipartiteState& state, const MarkovCoefficients& coeffs,
                                         double t, int steps);

// Right-hand side of the coefficient-form master equation in the frame
// rotating with H_s.
Matrix4c master_equation_rhs(const Matrix4c& rho, const MarkovCoefficients& coeffs);

struct TrajectoryPoint {
    double t;
    DensityMatrix4 rho;
};

struct Trajectory {
    PureBipartiteState state;
    MarkovCoefficients coeffs;
    std::vector<TrajectoryPoint> points;
};

// n_samples uniformly spaced times on [0, t_max].
Trajectory trajectory(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t_max,
                      int n_samples);

// Closed-form dynamics for a configuration. Rejects unequal orientations.
DensityMatrix4 density_matrix(const PureBipartiteState& state, const SystemConfig& config, double t);

}  // namespace twoatom
