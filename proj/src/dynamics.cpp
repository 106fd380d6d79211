#include "twoatom/dynamics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "twoatom/errors.hpp"

namespace twoatom {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx I{0.0, 1.0};

void require_time(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("time must be finite and >= 0");
    }
}

// exp(z) - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

PureBipartiteState PureBipartiteState::bell_like(double p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw DomainError("bell_like: p must lie in [0, 1]");
    }
    return {std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p)};
}

PureBipartiteState PureBipartiteState::normalized(cplx a11, cplx a10, cplx a01, cplx a00) {
    const double n = std::sqrt(std::norm(a11) + std::norm(a10) + std::norm(a01) + std::norm(a00));
    if (!std::isfinite(n) || n == 0.0) {
        throw DomainError("PureBipartiteState: amplitudes must be finite and not all zero");
    }
    return {a11 / n, a10 / n, a01 / n, a00 / n};
}

double PureBipartiteState::norm_squared() const {
    return std::norm(amp11) + std::norm(amp10) + std::norm(amp01) + std::norm(amp00);
}

void PureBipartiteState::validate() const {
    if (std::abs(norm_squared() - 1.0) > 1e-12) {
        throw DomainError("PureBipartiteState: amplitudes must be normalized");
    }
}

Matrix4c PureBipartiteState::projector() const {
    Eigen::Vector4cd v(amp11, amp10, amp01, amp00);
    return v * v.adjoint();
}

double DensityMatrix4::trace_error() const { return std::abs(m_.trace() - 1.0); }

double DensityMatrix4::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix4::min_eigenvalue() const {
    const Matrix4c h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix4::off_x_magnitude() const {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            if (k != l && k + l != 3) {
                worst = std::max(worst, std::abs(m_(k, l)));
            }
        }
    }
    return worst;
}

void DensityMatrix4::require_physical(double hermiticity_tol, double trace_tol) const {
    if (!m_.allFinite()) {
        throw DomainError("density matrix has non-finite entries");
    }
    if (hermiticity_error() > hermiticity_tol) {
        throw DomainError("density matrix is not Hermitian within tolerance");
    }
    if (trace_error() > trace_tol) {
        throw DomainError("density matrix trace differs from 1 beyond tolerance");
    }
}

cplx exponential_integral_factor(cplx k, double t) {
    const cplx kt = k * t;
    if (std::abs(kt) < 1e-8) {
        return t * (1.0 - 0.5 * kt + kt * kt / 6.0);
    }
    return -expm1(-kt) / k;
}

EvolutionFactors evolution_factors(const MarkovCoefficients& c, double t) {
    require_time(t);
    EvolutionFactors f;
    f.Gamma11 = c.a11 * t;
    f.Gamma12 = c.a12 * t;
    f.gamma11 = c.c11 * t;
    f.gamma12 = c.c12 * t;
    const double minus = c.a11 - c.a12;
    const double plus = c.a11 + c.a12;
    f.F = minus * exponential_integral_factor(2.0 * plus, t).real();
    f.G = plus * exponential_integral_factor(2.0 * minus, t).real();
    f.Fp = minus * exponential_integral_factor(2.0 * cplx(c.a11, -c.c12), t);
    f.Gp = plus * exponential_integral_factor(2.0 * cplx(c.a11, c.c12), t);
    return f;
}

// The one-excitation block is handled in the collective basis
// |+-> = (|10> +- |01>)/sqrt2, where the dissipator is diagonal.
DensityMatrix4 density_matrix_from_factors(const PureBipartiteState& s, const EvolutionFactors& f, double t) {
    const cplx alpha = s.amp11;
    const cplx sigma = s.amp00;
    const cplx s_plus = kInvSqrt2 * (s.amp10 + s.amp01);
    const cplx s_minus = kInvSqrt2 * (s.amp10 - s.amp01);
    const double abs_alpha2 = std::norm(alpha);

    const double e11 = std::exp(-f.Gamma11);
    const double e12 = std::exp(-f.Gamma12);
    const double e11_2 = e11 * e11;
    const double e12_2 = e12 * e12;
    const auto phase = [](double theta) { return std::polar(1.0, theta); };

    DensityMatrix4 rho;
    rho(1, 1) = abs_alpha2 * e11_2 * e11_2;
    rho(4, 1) = sigma * std::conj(alpha) * e11_2 * phase(2.0 * (f.gamma11 + t));

    const cplx plus_11 = s_plus * std::conj(alpha) * e11_2 * e11 * e12 * phase(t + f.gamma11 - f.gamma12);
    const cplx minus_11 = s_minus * std::conj(alpha) * e11_2 * e11 / e12 * phase(t + f.gamma11 + f.gamma12);
    rho(2, 1) = kInvSqrt2 * (plus_11 + minus_11);
    rho(3, 1) = kInvSqrt2 * (plus_11 - minus_11);

    const cplx ground_plus = e11 * e12 * phase(t + f.gamma11 + f.gamma12) *
                             (sigma * std::conj(s_plus) + 2.0 * s_plus * std::conj(alpha) * f.Gp);
    const cplx ground_minus = e11 / e12 * phase(t + f.gamma11 - f.gamma12) *
                              (sigma * std::conj(s_minus) - 2.0 * s_minus * std::conj(alpha) * f.Fp);
    rho(4, 2) = kInvSqrt2 * (ground_plus + ground_minus);
    rho(4, 3) = kInvSqrt2 * (ground_plus - ground_minus);

    const double pop_plus = e11_2 * e12_2 * (std::norm(s_plus) + 2.0 * abs_alpha2 * f.G);
    const double pop_minus = e11_2 / e12_2 * (std::norm(s_minus) + 2.0 * abs_alpha2 * f.F);
    const cplx plus_minus = s_plus * std::conj(s_minus) * e11_2 * phase(-2.0 * f.gamma12);
    const double mean = 0.5 * (pop_plus + pop_minus);
    rho(2, 2) = mean + plus_minus.real();
    rho(3, 3) = mean - plus_minus.real();
    rho(2, 3) = cplx(0.5 * (pop_plus - pop_minus), -plus_minus.imag());

    rho(4, 4) = 1.0 - rho(1, 1).real() - rho(2, 2).real() - rho(3, 3).real();

    for (int k = 1; k <= 4; ++k) {
        for (int l = k + 1; l <= 4; ++l) {
            if (k == 2 && l == 3) {
                rho(3, 2) = std::conj(rho(2, 3));
            } else {
                rho(k, l) = std::conj(rho(l, k));
            }
        }
    }
    return rho;
}

DensityMatrix4 density_matrix(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t) {
    require_time(t);
    state.validate();
    if (!coeffs.symmetric_pair) {
        throw DomainError("density_matrix: the closed form requires equal dipole orientations");
    }
    if (t == 0.0) {
        return DensityMatrix4(state.projector());
    }
    return density_matrix_from_factors(state, evolution_factors(coeffs, t), t);
}

DensityMatrix4 density_matrix(const PureBipartiteState& state, const SystemConfig& config, double t) {
    if (!config.equal_orientations()) {
        throw DomainError("density_matrix: the closed form requires equal dipole orientations");
    }
    return density_matrix(state, markov_coefficients(config), t);
}

Trajectory trajectory(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t_max,
                      int n_samples) {
    if (n_samples < 2) {
        throw DomainError("trajectory: n_samples must be >= 2");
    }
    if (!std::isfinite(t_max) || t_max <= 0.0) {
        throw DomainError("trajectory: t_max must be finite and > 0");
    }
    Trajectory out{state, coeffs, {}};
    out.points.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = (i == n_samples - 1) ? t_max : t_max * i / (n_samples - 1);
        out.points.push_back({t, density_matrix(state, coeffs, t)});
    }
    return out;
}

}  // namespace twoatom
