#include "twoatom/geometric_phase.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "twoatom/errors.hpp"
#include "twoatom/quadrature.hpp"

namespace twoatom {

namespace {

using special::kPi;

void require_windings(int windings) {
    if (windings < 1) {
        throw DomainError("windings must be >= 1");
    }
}

void require_p(double p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw DomainError("p must lie in [0, 1]");
    }
}

void require_bell_family(const PureBipartiteState& state) {
    state.validate();
    if (!state.is_x_shaped()) {
        throw DomainError("geometric phase: state must have no |10>, |01> components");
    }
}

// rho41 vanishes identically: the track is a fixed basis state and only the
// continuous p -> 0, 1 limits of the unitary phase are meaningful.
bool trivial_track(const PureBipartiteState& state) {
    return state.amp11 == cplx{} || state.amp00 == cplx{};
}

GpResult make_result(double phi, double p, int windings) {
    GpResult r;
    r.phi_exact = phi;
    r.phi_unitary = unitary_gp(p, windings);
    r.delta_phi = r.phi_exact - r.phi_unitary;
    r.ratio_metric = r.phi_unitary == 0.0 ? std::nan("") : 1.0 - r.phi_exact / r.phi_unitary;
    r.windings = windings;
    return r;
}

cplx overlap(const SpectralPoint& a, const SpectralPoint& b) { return a.u * b.u + std::conj(a.v) * b.v; }

double boundary_phase(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t_end) {
    const SpectralPoint a = spectral_point(density_matrix(state, coeffs, 0.0));
    const SpectralPoint b = spectral_point(density_matrix(state, coeffs, t_end));
    return std::arg(overlap(a, b));
}

double block_weight(const DensityMatrix4& rho, simd::WeightVariant variant) {
    const double r11 = rho(1, 1).real();
    const double r44 = rho(4, 4).real();
    const double a = std::abs(rho(4, 1));
    double w = 0.0;
    simd::connection_weight(&r11, &r44, &a, &w, 1, variant);
    return w;
}

simd::WeightVariant weight_variant(IntegrandVariant v) {
    return v == IntegrandVariant::Derived ? simd::WeightVariant::Derived : simd::WeightVariant::Printed;
}

}  // namespace

SpectralPoint spectral_point(const DensityMatrix4& rho) {
    const double r11 = rho(1, 1).real();
    const double r44 = rho(4, 4).real();
    const cplx r41 = rho(4, 1);
    const double a2 = std::norm(r41);
    const double d = r11 - r44;
    const double root = std::sqrt(d * d + 4.0 * a2);
    const double gap = d >= 0.0 ? 0.5 * (d + root) : 2.0 * a2 / (root - d);
    const double norm = std::sqrt(gap * gap + a2);
    if (!(norm > 0.0)) {
        throw DomainError("spectral_point: eigenvector undefined (rho41 = 0 with rho44 dominant)");
    }
    return {0.5 * (r11 + r44 + root), 0.5 * (r11 + r44 - root), gap / norm, r41 / norm};
}

double unitary_gp(double p, int windings) {
    require_p(p);
    require_windings(windings);
    return -2.0 * kPi * (1.0 - p) * windings;
}

const char* to_string(IntegrandVariant v) { return v == IntegrandVariant::Derived ? "derived" : "printed"; }

GpResult exact_gp_kinematic(const PureBipartiteState& state, const MarkovCoefficients& coeffs, int windings,
                            int steps_per_winding) {
    require_bell_family(state);
    require_windings(windings);
    if (steps_per_winding < 1000) {
        throw DomainError("exact_gp_kinematic: at least 1000 steps per winding are required");
    }
    const double p = std::norm(state.amp11);
    if (trivial_track(state)) {
        return make_result(unitary_gp(p, windings), p, windings);
    }

    const long coarse = static_cast<long>(steps_per_winding) * windings;
    const long fine = 4 * coarse;
    const double t_end = windings * kQuasiCycle;
    std::vector<SpectralPoint> track;
    track.reserve(fine + 1);
    for (long k = 0; k <= fine; ++k) {
        const double t = k == fine ? t_end : t_end * static_cast<double>(k) / static_cast<double>(fine);
        const SpectralPoint sp = spectral_point(density_matrix(state, coeffs, t));
        if (sp.lambda_plus - sp.lambda_minus < 1e-10) {
            throw DomainError("exact_gp_kinematic: eigenvalues of the |11>,|00> block cross at t=" +
                              std::to_string(t));
        }
        track.push_back(sp);
    }

    const auto connection = [&](long stride) {
        double sum = 0.0;
        for (long k = 0; k + stride <= fine; k += stride) {
            const cplx o = overlap(track[k], track[k + stride]);
            if (std::abs(o) < 0.99) {
                throw ConvergenceError("exact_gp_kinematic: consecutive eigenvectors overlap below 0.99");
            }
            sum += std::arg(o);
        }
        return sum;
    };
    const double s1 = connection(4);
    const double s2 = connection(2);
    const double s4 = connection(1);
    const double r1 = (4.0 * s2 - s1) / 3.0;
    const double r2 = (4.0 * s4 - s2) / 3.0;
    if (!(std::abs(r2 - r1) < 1e-8)) {
        throw ConvergenceError("exact_gp_kinematic: connection not converged (change " +
                               std::to_string(std::abs(r2 - r1)) + " rad); increase steps");
    }
    const double phi = std::arg(overlap(track.front(), track.back())) - r2;
    return make_result(phi, p, windings);
}

double exact_gp_closed_integral(const PureBipartiteState& state, const MarkovCoefficients& coeffs, int windings,
                                double quadrature_tol, IntegrandVariant variant) {
    require_bell_family(state);
    require_windings(windings);
    if (trivial_track(state)) {
        return variant == IntegrandVariant::Derived ? unitary_gp(std::norm(state.amp11), windings) : 0.0;
    }
    const auto w = weight_variant(variant);
    const auto f = [&](double t) { return block_weight(density_matrix(state, coeffs, t), w); };
    double integral = 0.0;
    for (int n = 0; n < windings; ++n) {
        integral += integrate(f, n * kQuasiCycle, (n + 1) * kQuasiCycle, quadrature_tol, 1e-15).value;
    }
    const double rate = 1.0 + coeffs.c11;
    if (variant == IntegrandVariant::Printed) {
        return -rate * integral;
    }
    return boundary_phase(state, coeffs, windings * kQuasiCycle) - 2.0 * rate * integral;
}

std::vector<double> closed_integral_by_winding(const PureBipartiteState& state, const MarkovCoefficients& coeffs,
                                               int max_windings, IntegrandVariant variant, int panels_per_winding) {
    require_bell_family(state);
    require_windings(max_windings);
    if (panels_per_winding < 1) {
        throw DomainError("closed_integral_by_winding: panels_per_winding must be >= 1");
    }
    std::vector<double> out;
    out.reserve(max_windings);
    if (trivial_track(state)) {
        for (int n = 1; n <= max_windings; ++n) {
            out.push_back(variant == IntegrandVariant::Derived ? unitary_gp(std::norm(state.amp11), n) : 0.0);
        }
        return out;
    }

    using rule = boost::math::quadrature::gauss<double, 20>;
    std::vector<double> nodes;
    std::vector<double> weights;
    for (std::size_t i = 0; i < rule::abscissa().size(); ++i) {
        const double x = rule::abscissa()[i];
        const double wt = rule::weights()[i];
        nodes.push_back(x);
        weights.push_back(wt);
        if (x != 0.0) {
            nodes.push_back(-x);
            weights.push_back(wt);
        }
    }
    const std::size_t per_winding = nodes.size() * panels_per_winding;
    const double half = 0.5 * kQuasiCycle / panels_per_winding;
    std::vector<double> r11(per_winding), r44(per_winding), a41(per_winding), w(per_winding);

    const auto w_variant = weight_variant(variant);
    const double rate = 1.0 + coeffs.c11;
    double integral = 0.0;
    for (int n = 0; n < max_windings; ++n) {
        for (int panel = 0; panel < panels_per_winding; ++panel) {
            const double mid = n * kQuasiCycle + (2 * panel + 1) * half;
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                const std::size_t idx = panel * nodes.size() + j;
                const DensityMatrix4 rho = density_matrix(state, coeffs, mid + half * nodes[j]);
                r11[idx] = rho(1, 1).real();
                r44[idx] = rho(4, 4).real();
                a41[idx] = std::abs(rho(4, 1));
            }
        }
        simd::connection_weight(r11.data(), r44.data(), a41.data(), w.data(), per_winding, w_variant);
        for (std::size_t idx = 0; idx < per_winding; ++idx) {
            integral += half * weights[idx % nodes.size()] * w[idx];
        }
        if (variant == IntegrandVariant::Printed) {
            out.push_back(-rate * integral);
        } else {
            out.push_back(boundary_phase(state, coeffs, (n + 1) * kQuasiCycle) - 2.0 * rate * integral);
        }
    }
    return out;
}

double gp_second_order(double p, const MarkovCoefficients& c, int windings) {
    require_p(p);
    require_windings(windings);
    const double first = c.c11 + 2.0 * kPi * p * c.a11;
    const double second = (2.0 * kPi * p / 3.0) * (3.0 * c.a11 * c.c11 + 4.0 * kPi * p * c.a12 * c.a12 -
                                                   4.0 * kPi * (1.0 - 3.0 * p) * c.a11 * c.a11);
    return -2.0 * kPi * (1.0 - p) * windings * (1.0 + first + second);
}

double gp_first_order_correction(double p, const SystemConfig& config) {
    require_p(p);
    if (p == 0.0) {
        throw DomainError("gp_first_order_correction: p = 0 is outside the domain");
    }
    config.validate();
    double bracket = 1.0;
    if (config.environment == Environment::ConductingPlate) {
        const double sb = weighted_b_ii(config.orientation_1, config.plate_distance_y);
        const double sh = weighted_h_ii(config.orientation_1, config.plate_distance_y, config.si_convention);
        bracket = 1.0 - 3.0 * (sb - sh / (2.0 * kPi * kPi * p));
    }
    return -4.0 * kPi * kPi * (1.0 - p) * p * config.coupling_ratio * bracket;
}

double p_max_correction(const SystemConfig& config) {
    config.validate();
    if (config.environment == Environment::FreeSpace) {
        return 0.5;
    }
    const double sb = weighted_b_ii(config.orientation_1, config.plate_distance_y);
    const double sh = weighted_h_ii(config.orientation_1, config.plate_distance_y, config.si_convention);
    const double denom = 1.0 - 3.0 * sb;
    if (std::abs(denom) <= 1e-8) {
        throw DomainError("p_max_correction: 1 - 3 sum r^2 b^ii vanishes");
    }
    const double p = 0.5 - 3.0 * sh / (4.0 * kPi * kPi * denom);
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("p_max_correction: extremum outside (0, 1)");
    }
    return p;
}

double delta_phi_max(const MarkovCoefficients& c) {
    if (!(c.a11 > 0.0)) {
        throw DomainError("delta_phi_max: a11 must be positive");
    }
    const double s = 2.0 * kPi * c.a11 + c.c11;
    return s * s / (4.0 * c.a11);
}

}  // namespace twoatom
