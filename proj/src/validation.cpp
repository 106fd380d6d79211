#include "twoatom/experiments/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/experiments/csv.hpp"
#include "twoatom/experiments/sweeps.hpp"
#include "twoatom/geometric_phase.hpp"
#include "twoatom/reference.hpp"

namespace twoatom::experiments {

namespace {

using special::kPi;

struct Builder {
    CheckResult r;
    Builder(std::string id, std::string title, bool acceptance = true) {
        r.id = std::move(id);
        r.title = std::move(title);
        r.acceptance = acceptance;
    }
    void metric(const std::string& name, double v) { r.metrics.emplace_back(name, v); }
    CheckResult done(bool passed, std::string detail = {}) {
        r.passed = passed;
        r.detail = std::move(detail);
        return r;
    }
};

std::string fmt(double v) { return format_double(v); }

std::function<EvolutionFactors(const MarkovCoefficients&, double)> factors_of(const ValidationOptions& opt) {
    if (opt.factors_under_test) {
        return opt.factors_under_test;
    }
    return [](const MarkovCoefficients& c, double t) { return evolution_factors(c, t); };
}

DipoleOrientation random_orientation(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const double a = n(rng), b = n(rng), c = n(rng);
        if (a * a + b * b + c * c > 1e-6) {
            return DipoleOrientation::from_direction(a, b, c);
        }
    }
}

SystemConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> geom(1.0, 10.0);
    std::uniform_real_distribution<double> log_g(-5.0, -2.0);
    std::bernoulli_distribution plate(0.7);
    SystemConfig c;
    c.separation_x = geom(rng);
    c.plate_distance_y = geom(rng);
    c.coupling_ratio = std::pow(10.0, log_g(rng));
    c.orientation_1 = c.orientation_2 = random_orientation(rng);
    c.environment = plate(rng) ? Environment::ConductingPlate : Environment::FreeSpace;
    return c;
}

PureBipartiteState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return PureBipartiteState::normalized({n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)});
}

SystemConfig preset(Environment env, const char* pol, double x, double y, double coupling) {
    SystemConfig c;
    c.environment = env;
    c.orientation_1 = c.orientation_2 = parse_orientation(pol);
    c.separation_x = x;
    c.plate_distance_y = y;
    c.coupling_ratio = coupling;
    return c;
}

double half_life_rho41(const SystemConfig& cfg) {
    const auto c = markov_coefficients(cfg);
    const auto s = PureBipartiteState::bell_like(0.5);
    const double target = 0.5 * std::abs(density_matrix(s, c, 0.0)(4, 1));
    double lo = 0.0;
    double hi = 1.0 / c.a11;
    while (std::abs(density_matrix(s, c, hi)(4, 1)) > target) {
        hi *= 2.0;
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(density_matrix(s, c, mid)(4, 1)) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double loglog_slope(const std::function<double(double)>& f, double a, double b, int n) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double y = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
        const double lx = std::log(y);
        const double ly = std::log(std::abs(f(y)));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool changes_sign(const std::function<double(double)>& f, double a, double b, int n) {
    double prev = f(a);
    for (int i = 1; i < n; ++i) {
        const double v = f(a + (b - a) * i / (n - 1));
        if ((v > 0) != (prev > 0)) {
            return true;
        }
        prev = v;
    }
    return false;
}

}  // namespace

EvolutionFactors corrupted_factors(const MarkovCoefficients& coeffs, double t) {
    EvolutionFactors f = evolution_factors(coeffs, t);
    f.F *= 1.0 + 1e-6;
    return f;
}

CheckResult check_special_functions(const ValidationOptions& opt) {
    Builder b("special_functions", "Si/Ci against the extended-precision series, 200 points in (0, 50]");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    double max_si = 0.0, max_ci = 0.0;
    for (int i = 0; i < 200; ++i) {
        double y = u(rng);
        if (y == 0.0) {
            y = 50.0;
        }
        max_si = std::max(max_si, std::abs(special::sine_integral(y) - reference::sine_integral_series(y)));
        max_ci = std::max(max_ci, std::abs(special::cosine_integral(y) - reference::cosine_integral_series(y)));
    }
    b.metric("max_abs_error_si", max_si);
    b.metric("max_abs_error_ci", max_ci);
    b.metric("tolerance", 1e-11);
    return b.done(max_si < 1e-11 && max_ci < 1e-11);
}

CheckResult check_evolution_factors(const ValidationOptions& opt) {
    Builder b("evolution_factors", "closed-form F, G, F', G' against quadrature of their integrals");
    std::mt19937_64 rng(opt.seed + 1);
    const auto factors = factors_of(opt);
    double worst = 0.0;
    for (int set = 0; set < 50; ++set) {
        const auto c = markov_coefficients(random_config(rng));
        std::uniform_real_distribution<double> ut(0.0, 10.0 / c.a11);
        std::vector<double> times{0.0, 10.0 / c.a11};
        for (int k = 0; k < 6; ++k) {
            times.push_back(ut(rng));
        }
        for (double t : times) {
            const auto f = factors(c, t);
            const auto q = reference::factors_by_quadrature(c, t);
            worst = std::max({worst, std::abs(f.F - q.F), std::abs(f.G - q.G), std::abs(f.Fp - q.Fp),
                              std::abs(f.Gp - q.Gp)});
        }
    }
    b.metric("max_abs_error", worst);
    b.metric("tolerance", 1e-10);
    return b.done(worst < 1e-10);
}

CheckResult check_master_equation(const ValidationOptions& opt) {
    Builder b("master_equation", "closed-form rho(t) against the RK4 master-equation integrator, 50 configs");
    std::mt19937_64 rng(opt.seed + 2);
    const auto factors = factors_of(opt);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto c = markov_coefficients(random_config(rng));
        const auto s = random_state(rng);
        std::uniform_real_distribution<double> ut(0.0, 5.0 / c.a11);
        const double t = ut(rng);
        const double rate = std::abs(c.a11) + std::abs(c.a12) + std::abs(c.c11) + std::abs(c.c12);
        const int steps = std::max(200, static_cast<int>(std::ceil(400.0 * rate * t)));
        const auto closed = density_matrix_from_factors(s, factors(c, t), t);
        const auto ode = integrate_master_equation(s, c, t, steps);
        worst = std::max(worst, (closed.matrix() - ode.matrix()).cwiseAbs().maxCoeff());
    }
    b.metric("max_abs_elementwise", worst);
    b.metric("tolerance", 1e-7);
    return b.done(worst < 1e-7);
}

CheckResult check_state_validity(const ValidationOptions& opt) {
    Builder b("state_validity", "trace, Hermiticity and positivity along the swept trajectories");
    SweepSpec spec;
    spec.environments = {Environment::FreeSpace, Environment::ConductingPlate};
    spec.pols = {"x", "y", "z", "iso"};
    spec.y_values = {2.0, 4.0, 10.0, 40.0};
    spec.p_values = {0.0, 0.1, 0.5, 0.9, 1.0};
    spec.coupling_values = {1e-4, 1e-2};
    const auto grid = expand_grid(spec);
    std::vector<std::array<double, 3>> worst(grid.size());
    std::vector<char> positive(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        const auto c = markov_coefficients(grid[i].config);
        positive[i] = c.positive_generator();
        const auto traj =
            trajectory(PureBipartiteState::bell_like(grid[i].config.entanglement_p), c, default_t_max(c), 400);
        std::array<double, 3> w{0.0, 0.0, 0.0};
        for (const auto& pt : traj.points) {
            w[0] = std::max(w[0], pt.rho.trace_error());
            w[1] = std::max(w[1], pt.rho.hermiticity_error());
            w[2] = std::min(w[2], pt.rho.min_eigenvalue());
        }
        worst[i] = w;
    });
    double tr = 0.0, herm = 0.0, eig = 0.0, eig_positive = 0.0;
    std::string detail;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        tr = std::max(tr, worst[i][0]);
        herm = std::max(herm, worst[i][1]);
        eig = std::min(eig, worst[i][2]);
        if (positive[i]) {
            eig_positive = std::min(eig_positive, worst[i][2]);
        } else if (worst[i][2] <= -1e-9) {
            const auto& c = grid[i].config;
            detail += std::string(to_string(c.environment)) + " pol=" + grid[i].pol + " x=" + fmt(c.separation_x) +
                      " y=" + fmt(c.plate_distance_y) + " p=" + fmt(c.entanglement_p) +
                      " g=" + fmt(c.coupling_ratio) + " (a11 < |a12|); ";
        }
    }
    b.metric("trajectories", static_cast<double>(grid.size()));
    b.metric("non_positive_generators",
             static_cast<double>(std::count(positive.begin(), positive.end(), char{0})));
    b.metric("max_trace_error", tr);
    b.metric("max_hermiticity_error", herm);
    b.metric("min_eigenvalue", eig);
    b.metric("min_eigenvalue_positive_generators", eig_positive);
    return b.done(tr < 1e-10 && herm < 1e-12 && eig > -1e-9, detail);
}

CheckResult check_concurrence(const ValidationOptions& opt) {
    Builder b("concurrence", "generic concurrence against the X-state closed form; Bell states");
    std::mt19937_64 rng(opt.seed + 3);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Eigen::Matrix2cd m1, m2;
        for (int k = 0; k < 4; ++k) {
            m1(k / 2, k % 2) = {n(rng), n(rng)};
            m2(k / 2, k % 2) = {n(rng), n(rng)};
        }
        const Eigen::Matrix2cd outer = m1 * m1.adjoint();  // {|11>, |00>} block
        const Eigen::Matrix2cd inner = m2 * m2.adjoint();  // {|10>, |01>} block
        Matrix4c rho = Matrix4c::Zero();
        rho(0, 0) = outer(0, 0);
        rho(0, 3) = outer(0, 1);
        rho(3, 0) = outer(1, 0);
        rho(3, 3) = outer(1, 1);
        rho(1, 1) = inner(0, 0);
        rho(1, 2) = inner(0, 1);
        rho(2, 1) = inner(1, 0);
        rho(2, 2) = inner(1, 1);
        rho /= rho.trace();
        const DensityMatrix4 d(rho);
        worst = std::max(worst, std::abs(concurrence(d) - concurrence_x_state(d)));
    }
    double bell = 0.0;
    const double h = std::sqrt(0.5);
    for (const auto& s : {PureBipartiteState{h, 0.0, 0.0, h}, PureBipartiteState{h, 0.0, 0.0, -h},
                          PureBipartiteState{0.0, h, h, 0.0}, PureBipartiteState{0.0, h, -h, 0.0}}) {
        bell = std::max(bell, std::abs(concurrence(DensityMatrix4(s.projector())) - 1.0));
    }
    b.metric("max_abs_difference", worst);
    b.metric("bell_max_deviation", bell);
    return b.done(worst < 1e-10 && bell < 1e-12);
}

CheckResult check_gp_routes(const ValidationOptions& opt) {
    Builder b("gp_routes", "kinematic GP against the closed integral; unitary limit");
    std::vector<std::pair<SystemConfig, double>> grid;
    for (auto env : {Environment::FreeSpace, Environment::ConductingPlate}) {
        for (double p : {0.1, 0.5, 0.9}) {
            for (double g : {1e-5, 1e-4, 1e-3}) {
                grid.emplace_back(preset(env, "y", 2.0, 4.0, g), p);
            }
        }
    }
    std::vector<double> diffs(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        const auto c = markov_coefficients(grid[i].first);
        const auto s = PureBipartiteState::bell_like(grid[i].second);
        diffs[i] = std::abs(exact_gp_kinematic(s, c, 1).phi_exact - exact_gp_closed_integral(s, c, 1));
    });
    const double route = *std::max_element(diffs.begin(), diffs.end());
    double unitary = 0.0;
    for (auto env : {Environment::FreeSpace, Environment::ConductingPlate}) {
        const auto c = markov_coefficients(preset(env, "y", 2.0, 4.0, 1e-12));
        for (double p : {0.1, 0.5, 0.9}) {
            for (int n : {1, 5}) {
                const auto r = exact_gp_kinematic(PureBipartiteState::bell_like(p), c, n);
                unitary = std::max(unitary, std::abs(r.phi_exact - unitary_gp(p, n)));
            }
        }
    }
    b.metric("max_route_difference", route);
    b.metric("max_unitary_limit_deviation", unitary);
    b.metric("tolerance", 1e-6);
    return b.done(route < 1e-6 && unitary < 1e-6);
}

CheckResult check_weak_coupling_expansion(const ValidationOptions& opt) {
    Builder b("weak_coupling_expansion",
              "first-order GP correction within 5% of exact up to coupling 1e-4, distinguishable above 5e-4");
    const std::vector<double> small{1e-6, 1e-5, 1e-4};
    const std::vector<double> large{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    std::vector<std::pair<SystemConfig, double>> pts;
    for (const char* pol : {"x", "y"}) {
        for (double p : {0.1, 0.5, 0.9}) {
            pts.emplace_back(preset(Environment::ConductingPlate, pol, 2.0, 4.0, 1e-4), p);
        }
    }
    std::vector<double> worst_small(pts.size()), best_large(pts.size());
    parallel_for(pts.size(), opt.threads, [&](std::size_t i) {
        SystemConfig cfg = pts[i].first;
        cfg.entanglement_p = pts[i].second;
        double ws = 0.0, bl = 0.0;
        for (double g : small) {
            ws = std::max(ws, expansion_row(cfg, g, kDefaultGpSteps).relative_gap);
        }
        for (double g : large) {
            bl = std::max(bl, expansion_row(cfg, g, kDefaultGpSteps).relative_gap);
        }
        worst_small[i] = ws;
        best_large[i] = bl;
    });
    const double ws = *std::max_element(worst_small.begin(), worst_small.end());
    const double bl = *std::max_element(best_large.begin(), best_large.end());
    b.metric("max_gap_up_to_1e-4", ws);
    b.metric("max_gap_above_5e-4", bl);
    return b.done(ws < 0.05 && bl > 0.05);
}

CheckResult check_first_order_consistency(const ValidationOptions&) {
    Builder b("first_order_consistency", "first-order formula, truncated expansion and p of maximal correction");
    std::vector<SystemConfig> cfgs{preset(Environment::FreeSpace, "y", 2.0, 4.0, 1e-5),
                                   preset(Environment::ConductingPlate, "y", 2.0, 4.0, 1e-5),
                                   preset(Environment::ConductingPlate, "x", 2.0, 4.0, 1e-5),
                                   preset(Environment::ConductingPlate, "iso", 2.0, 2.0, 1e-4),
                                   preset(Environment::ConductingPlate, "z", 3.0, 1.5, 1e-3)};
    double identity = 0.0;
    double extremum = 0.0;
    double slope = 0.0;
    for (const auto& cfg : cfgs) {
        const auto c = markov_coefficients(cfg);
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
            const double first = gp_first_order_correction(p, cfg);
            const double truncated = -2.0 * kPi * (1.0 - p) * (c.c11 + 2.0 * kPi * p * c.a11);
            if (truncated != 0.0) {
                identity = std::max(identity, std::abs(first - truncated) / std::abs(truncated));
            } else {
                identity = std::max(identity, std::abs(first));
            }
        }
        const double pstar = p_max_correction(cfg);
        const auto neg_abs = [&](double p) { return -std::abs(gp_first_order_correction(p, cfg)); };
        const auto found = boost::math::tools::brent_find_minima(neg_abs, 0.01, 0.99, 40);
        extremum = std::max(extremum, std::abs(found.first - pstar));
        const double h = 1e-5;
        const double d = (gp_first_order_correction(pstar + h, cfg) - gp_first_order_correction(pstar - h, cfg)) /
                         (2.0 * h * cfg.coupling_ratio);
        slope = std::max(slope, std::abs(d));
    }
    const double free_p = p_max_correction(preset(Environment::FreeSpace, "x", 2.0, 4.0, 1e-4));
    b.metric("max_relative_identity_error", identity);
    b.metric("max_extremum_offset", extremum);
    b.metric("max_derivative_at_pmax_per_coupling", slope);
    b.metric("free_space_pmax", free_p);
    return b.done(identity < 1e-12 && extremum < 1e-6 && slope < 1e-8 && free_p == 0.5);
}

CheckResult check_qualitative_orderings(const ValidationOptions& opt) {
    Builder b("qualitative_orderings",
              "perpendicular/free/parallel orderings at x = 2, d/L = 1; plate effects vanish by d = 20L");
    const double g = 1e-4;
    const SystemConfig perp = preset(Environment::ConductingPlate, "y", 2.0, 4.0, g);
    const SystemConfig free = preset(Environment::FreeSpace, "y", 2.0, 4.0, g);
    const SystemConfig par = preset(Environment::ConductingPlate, "x", 2.0, 4.0, g);

    const double t_perp = half_life_rho41(perp) * g;
    const double t_free = half_life_rho41(free) * g;
    const double t_par = half_life_rho41(par) * g;
    const bool half_life = t_perp < t_free && t_free < t_par;
    b.metric("half_life_perp_gamma0", t_perp);
    b.metric("half_life_free_gamma0", t_free);
    b.metric("half_life_par_gamma0", t_par);

    const auto death = [&](const SystemConfig& cfg) {
        const auto c = markov_coefficients(cfg);
        return first_death_time(trajectory(PureBipartiteState::bell_like(0.5), c, default_t_max(c), 2000)) * g;
    };
    const double d_perp = death(perp), d_free = death(free), d_par = death(par);
    const bool deaths = d_perp > 0 && d_free > 0 && d_par > 0 && d_perp < d_free && d_free < d_par;
    b.metric("first_zero_perp_gamma0", d_perp);
    b.metric("first_zero_free_gamma0", d_free);
    b.metric("first_zero_par_gamma0", d_par);

    std::array<double, 3> ratio{};
    const std::array<SystemConfig, 3> gp_cfgs{perp, free, par};
    parallel_for(3, opt.threads, [&](std::size_t i) {
        ratio[i] = exact_gp_kinematic(PureBipartiteState::bell_like(0.5), markov_coefficients(gp_cfgs[i]), 5)
                       .ratio_metric;
    });
    const bool gp = ratio[0] > ratio[1] && ratio[1] > ratio[2];
    b.metric("gp_ratio_perp", ratio[0]);
    b.metric("gp_ratio_free", ratio[1]);
    b.metric("gp_ratio_par", ratio[2]);

    bool far = true;
    for (const char* pol : {"y", "x"}) {
        const auto r = plate_comparison(preset(Environment::ConductingPlate, pol, 2.0, 80.0, g), 4000, 0.0);
        b.metric(std::string("far_delta_abs_rho41_") + pol, r.delta_abs_rho41_at_pi);
        b.metric(std::string("far_delta_t_max_gamma0_") + pol, r.delta_t_max);
        far = far && r.revival_found && std::abs(r.delta_abs_rho41_at_pi) < 1e-3 && std::abs(r.delta_t_max) < 1e-3;
    }

    std::ostringstream detail;
    detail << "half_life=" << (half_life ? "pass" : "fail") << " first_zero=" << (deaths ? "pass" : "fail")
           << " gp_ratio=" << (gp ? "pass" : "fail") << " far_field=" << (far ? "pass" : "fail");
    return b.done(half_life && deaths && gp && far, detail.str());
}

CheckResult check_near_field_scaling(const ValidationOptions& opt) {
    Builder b("near_field_scaling", "log-log slope of |h11(y)| on [1, 3] equal to -3 within 0.3");
    bool ok = true;
    std::string detail;
    for (Axis m : kAxes) {
        const auto f = [&](double y) { return blocks::h_ii(y, m, opt.si_convention); };
        const double s = loglog_slope(f, 1.0, 3.0, 41);
        const bool sign_change = changes_sign(f, 1.0, 3.0, 201);
        const std::string name = std::string("slope_") + "xyz"[static_cast<int>(m) - 1];
        b.metric(name, s);
        if (sign_change) {
            detail += name + ": h11 changes sign on [1, 3]; ";
        }
        ok = ok && !sign_change && std::abs(s + 3.0) <= 0.3;
    }
    detail += std::string("si convention ") + special::to_string(opt.si_convention);
    return b.done(ok, detail);
}

CheckResult info_si_convention(const ValidationOptions&) {
    Builder b("si_convention", "h11 slopes under both si conventions, and the y -> 0 slope", false);
    for (auto conv : {special::SiConvention::Shifted, special::SiConvention::Plain}) {
        for (Axis m : {Axis::X, Axis::Y}) {
            const auto f = [&](double y) { return blocks::h_ii(y, m, conv); };
            const std::string tag = std::string(special::to_string(conv)) + "_" + "xyz"[static_cast<int>(m) - 1];
            b.metric("slope_1_3_" + tag, loglog_slope(f, 1.0, 3.0, 41));
            b.metric("slope_small_y_" + tag, loglog_slope(f, 1e-3, 1e-2, 21));
        }
    }
    return b.done(true);
}

CheckResult info_integrand_variants(const ValidationOptions&) {
    Builder b("integrand_variants", "closed-integral GP, derived and printed integrands, against kinematic", false);
    const auto c = markov_coefficients(preset(Environment::ConductingPlate, "y", 2.0, 2.0, 1e-4));
    const auto s = PureBipartiteState::bell_like(0.5);
    const double kin = exact_gp_kinematic(s, c, 1).phi_exact;
    const double derived = exact_gp_closed_integral(s, c, 1, 1e-10, IntegrandVariant::Derived);
    const double printed = exact_gp_closed_integral(s, c, 1, 1e-10, IntegrandVariant::Printed);
    b.metric("phi_kinematic", kin);
    b.metric("phi_derived", derived);
    b.metric("phi_printed", printed);
    b.metric("derived_minus_kinematic", derived - kin);
    b.metric("printed_minus_kinematic", printed - kin);
    return b.done(true);
}

CheckResult info_contact_limit(const ValidationOptions&) {
    Builder b("contact_limit", "a11/gamma0 at y = 1e-3 (image-dipole picture: 0 parallel, 2 perpendicular)", false);
    for (const char* pol : {"x", "y"}) {
        SystemConfig cfg = preset(Environment::ConductingPlate, pol, 2.0, 1e-3, 1.0);
        b.metric(std::string("a11_") + pol, markov_coefficients(cfg).a11);
    }
    return b.done(true);
}

std::vector<CheckResult> run_acceptance(const ValidationOptions& opt) {
    return {check_special_functions(opt),       check_evolution_factors(opt),
            check_master_equation(opt),         check_state_validity(opt),
            check_concurrence(opt),             check_gp_routes(opt),
            check_weak_coupling_expansion(opt), check_first_order_consistency(opt),
            check_qualitative_orderings(opt),   check_near_field_scaling(opt)};
}

std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
    auto all = run_acceptance(opt);
    all.push_back(info_si_convention(opt));
    all.push_back(info_integrand_variants(opt));
    all.push_back(info_contact_limit(opt));
    return all;
}

bool all_acceptance_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return !r.acceptance || r.passed; });
}

nlohmann::json report_json(const std::vector<CheckResult>& results, const ValidationOptions& opt) {
    nlohmann::json checks = nlohmann::json::array();
    int passed = 0, failed = 0;
    for (const auto& r : results) {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [k, v] : r.metrics) {
            m[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(fmt(v));
        }
        checks.push_back({{"id", r.id},
                          {"title", r.title},
                          {"acceptance", r.acceptance},
                          {"passed", r.passed},
                          {"metrics", m},
                          {"detail", r.detail}});
        if (r.acceptance) {
            (r.passed ? passed : failed)++;
        }
    }
    return {{"tool_version", kToolVersion},
            {"si_convention", special::to_string(opt.si_convention)},
            {"fault_injected", static_cast<bool>(opt.factors_under_test)},
            {"checks", checks},
            {"summary", {{"acceptance_passed", passed}, {"acceptance_failed", failed}}}};
}

}  // namespace twoatom::experiments
