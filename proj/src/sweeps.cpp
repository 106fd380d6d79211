#include "twoatom/experiments/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "twoatom/errors.hpp"
#include "twoatom/simd/batch.hpp"

namespace twoatom::experiments {

namespace {

using special::kPi;

template <class T>
std::vector<T> or_default(const std::vector<T>& v, const T& fallback) {
    return v.empty() ? std::vector<T>{fallback} : v;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

std::string index_name(const char* stem, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%04zu.csv", stem, i);
    return buf;
}

double resolve_t_max(double requested, const MarkovCoefficients& c) {
    return requested > 0.0 ? requested : default_t_max(c);
}

cplx rho32(const DensityMatrix4& rho) { return rho(3, 2); }

// Sign of d|rho32|/dt from the generator; rho32 carries no free phase.
double rho32_slope(const PureBipartiteState& state, const MarkovCoefficients& c, double t) {
    const DensityMatrix4 lab = density_matrix(state, c, t);
    constexpr double energy[4] = {1.0, 0.0, 0.0, -1.0};
    Matrix4c rot = lab.matrix();
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            rot(k, l) *= std::polar(1.0, (energy[k] - energy[l]) * t);
        }
    }
    const Matrix4c d = master_equation_rhs(rot, c);
    return (std::conj(rot(2, 1)) * d(2, 1)).real();
}

struct PointOutcome {
    std::vector<NamedTable> files;
    std::vector<std::vector<std::string>> rows;
    std::string status = "ok";
    std::string message;
};

SweepResult run_points(const std::vector<GridPoint>& grid, unsigned threads, const char* aggregate_name,
                       const std::vector<std::string>& aggregate_header,
                       const std::function<PointOutcome(const GridPoint&, std::size_t)>& fn) {
    std::vector<PointOutcome> outcomes(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        try {
            outcomes[i] = fn(grid[i], i);
        } catch (const std::exception& e) {
            outcomes[i] = PointOutcome{};
            outcomes[i].status = "error";
            outcomes[i].message = e.what();
        }
        auto warnings = grid[i].config.validate();
        if (!markov_coefficients(grid[i].config).positive_generator()) {
            warnings.push_back("a11 < |a12|: collective decay rate negative, states leave the physical set");
        }
        if (!warnings.empty()) {
            const std::string w = join(warnings, "; ");
            outcomes[i].message = outcomes[i].message.empty() ? w : outcomes[i].message + "; " + w;
        }
    });

    SweepResult result;
    result.manifest.header = concat({"index", "files", "status", "message"}, config_columns());
    CsvTable aggregate;
    aggregate.header = aggregate_header;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto& o = outcomes[i];
        std::vector<std::string> names;
        for (auto& f : o.files) {
            names.push_back(f.name);
            result.files.push_back(std::move(f));
        }
        if (!aggregate_header.empty()) {
            names.push_back(aggregate_name);
            for (auto& r : o.rows) {
                aggregate.add_row(std::move(r));
            }
        }
        result.manifest.add_row(concat({std::to_string(i), join(names, ";"), o.status, o.message},
                                       config_values(grid[i].config, grid[i].pol)));
    }
    if (!aggregate_header.empty()) {
        result.files.push_back({aggregate_name, std::move(aggregate)});
    }
    return result;
}

}  // namespace

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::CoherenceDecay: return "coherence";
        case Quantity::PlateComparison: return "plate";
        case Quantity::Concurrence: return "concurrence";
        case Quantity::GeometricPhase: return "gp";
        case Quantity::ExpansionValidation: return "expansion";
        case Quantity::Kernels: return "kernels";
    }
    return "?";
}

Quantity parse_quantity(const std::string& s) {
    for (Quantity q : {Quantity::CoherenceDecay, Quantity::PlateComparison, Quantity::Concurrence,
                       Quantity::GeometricPhase, Quantity::ExpansionValidation, Quantity::Kernels}) {
        if (s == to_string(q)) {
            return q;
        }
    }
    throw DomainError("unknown quantity '" + s + "'");
}

DipoleOrientation parse_orientation(const std::string& s) {
    if (s == "x") return DipoleOrientation::along(Axis::X);
    if (s == "y") return DipoleOrientation::along(Axis::Y);
    if (s == "z") return DipoleOrientation::along(Axis::Z);
    if (s == "iso") return DipoleOrientation::isotropic();
    std::stringstream in(s);
    std::string item;
    std::vector<double> v;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw DomainError("bad orientation '" + s + "': expected x, y, z, iso or a,b,c");
        }
        v.push_back(d);
    }
    if (v.size() != 3) {
        throw DomainError("bad orientation '" + s + "': expected three components");
    }
    return DipoleOrientation::from_direction(v[0], v[1], v[2]);
}

Environment parse_environment(const std::string& s) {
    if (s == "free") return Environment::FreeSpace;
    if (s == "plate") return Environment::ConductingPlate;
    throw DomainError("unknown environment '" + s + "' (free|plate)");
}

special::SiConvention parse_si_convention(const std::string& s) {
    if (s == "shifted") return special::SiConvention::Shifted;
    if (s == "plain") return special::SiConvention::Plain;
    throw DomainError("unknown si convention '" + s + "' (shifted|plain)");
}

IntegrandVariant parse_integrand_variant(const std::string& s) {
    if (s == "derived") return IntegrandVariant::Derived;
    if (s == "printed") return IntegrandVariant::Printed;
    throw DomainError("unknown integrand variant '" + s + "' (derived|printed)");
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec, bool include_coupling) {
    std::vector<GridPoint> grid;
    const auto envs = or_default(spec.environments, spec.base.environment);
    const auto pols = or_default(spec.pols, spec.base_pol);
    const auto xs = or_default(spec.x_values, spec.base.separation_x);
    const bool by_ratio = spec.y_values.empty() && !spec.d_over_l_values.empty();
    const auto ys = by_ratio ? spec.d_over_l_values : or_default(spec.y_values, spec.base.plate_distance_y);
    const auto ps = or_default(spec.p_values, spec.base.entanglement_p);
    const auto gs = include_coupling ? or_default(spec.coupling_values, spec.base.coupling_ratio)
                                     : std::vector<double>{spec.base.coupling_ratio};
    for (Environment env : envs) {
        for (const auto& pol : pols) {
            const DipoleOrientation r = parse_orientation(pol);
            for (double x : xs) {
                for (double yv : ys) {
                    for (double p : ps) {
                        for (double g : gs) {
                            GridPoint pt{spec.base, pol};
                            pt.config.environment = env;
                            pt.config.orientation_1 = r;
                            pt.config.orientation_2 = r;
                            pt.config.separation_x = x;
                            pt.config.plate_distance_y = by_ratio ? 2.0 * yv * x : yv;
                            pt.config.entanglement_p = p;
                            pt.config.coupling_ratio = g;
                            pt.config.validate();
                            grid.push_back(pt);
                        }
                    }
                }
            }
        }
    }
    return grid;
}

double default_t_max(const MarkovCoefficients& c) {
    if (!(c.a11 > 0.0)) {
        throw DomainError("default t_max needs a11 > 0");
    }
    return 10.0 / c.a11;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

CsvTable coherence_table(const GridPoint& point, int n_samples, double t_max) {
    const auto c = markov_coefficients(point.config);
    const auto state = PureBipartiteState::bell_like(point.config.entanglement_p);
    const auto traj = trajectory(state, c, resolve_t_max(t_max, c), n_samples);
    CsvTable t;
    t.header = concat({"t_over_tau", "abs_rho41", "abs_rho32", "re_rho41", "im_rho41", "re_rho32", "im_rho32",
                       "rho11", "rho22", "rho33", "rho44"},
                      config_columns());
    const auto echo = config_values(point.config, point.pol);
    for (const auto& pt : traj.points) {
        const cplx r41 = pt.rho(4, 1);
        const cplx r32 = rho32(pt.rho);
        t.add_row(concat({format_double(pt.t / kPi), format_double(std::abs(r41)), format_double(std::abs(r32)),
                          format_double(r41.real()), format_double(r41.imag()), format_double(r32.real()),
                          format_double(r32.imag()), format_double(pt.rho(1, 1).real()),
                          format_double(pt.rho(2, 2).real()), format_double(pt.rho(3, 3).real()),
                          format_double(pt.rho(4, 4).real())},
                         echo));
    }
    return t;
}

ConcurrenceOutput concurrence_tables(const GridPoint& point, int n_samples, double t_max) {
    const auto c = markov_coefficients(point.config);
    const auto state = PureBipartiteState::bell_like(point.config.entanglement_p);
    const auto traj = trajectory(state, c, resolve_t_max(t_max, c), n_samples);

    const std::size_t n = traj.points.size();
    std::vector<double> r11(n), r22(n), r33(n), r44(n), a23(n), a14(n), conc(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& rho = traj.points[i].rho;
        rho.require_physical();
        if (rho.off_x_magnitude() > 1e-12) {
            throw DomainError("concurrence sweep: trajectory left the X-shaped subspace");
        }
        r11[i] = std::max(rho(1, 1).real(), 0.0);
        r22[i] = std::max(rho(2, 2).real(), 0.0);
        r33[i] = std::max(rho(3, 3).real(), 0.0);
        r44[i] = std::max(rho(4, 4).real(), 0.0);
        a23[i] = std::abs(rho(2, 3));
        a14[i] = std::abs(rho(1, 4));
    }
    simd::concurrence_x({r11.data(), r22.data(), r33.data(), r44.data(), a23.data(), a14.data()}, conc.data(), n);

    ConcurrenceOutput out;
    const auto echo = config_values(point.config, point.pol);
    out.samples.header = concat({"t_over_tau", "concurrence"}, config_columns());
    for (std::size_t i = 0; i < n; ++i) {
        out.samples.add_row(concat({format_double(traj.points[i].t / kPi), format_double(conc[i])}, echo));
    }
    out.events.header = concat({"kind", "t", "t_over_tau", "gamma0_t"}, config_columns());
    for (const auto& e : entanglement_events(traj, 0.0, &out.warnings)) {
        out.events.add_row(concat({to_string(e.kind), format_double(e.time), format_double(e.time / kPi),
                                   format_double(e.time * point.config.coupling_ratio)},
                                  echo));
    }
    return out;
}

CsvTable gp_table(const GridPoint& point, int windings, IntegrandVariant variant, int steps) {
    const auto c = markov_coefficients(point.config);
    const auto state = PureBipartiteState::bell_like(point.config.entanglement_p);
    const auto closed = closed_integral_by_winding(state, c, windings, variant);
    CsvTable t;
    t.header = concat({"N", "phi_exact", "phi_unitary", "delta_phi", "ratio_metric", "phi_closed_integral",
                       "integrand_variant"},
                      config_columns());
    const auto echo = config_values(point.config, point.pol);
    for (int n = 1; n <= windings; ++n) {
        const GpResult r = exact_gp_kinematic(state, c, n, steps);
        t.add_row(concat({std::to_string(n), format_double(r.phi_exact), format_double(r.phi_unitary),
                          format_double(r.delta_phi), format_double(r.ratio_metric), format_double(closed[n - 1]),
                          to_string(variant)},
                         echo));
    }
    return t;
}

double revival_time(const PureBipartiteState& state, const MarkovCoefficients& c, double t_max, int n_samples) {
    const auto traj = trajectory(state, c, t_max, n_samples);
    const auto& pts = traj.points;
    std::vector<double> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        v[i] = std::abs(rho32(pts[i].rho));
    }
    std::size_t i = 1;
    while (i + 1 < v.size() && !(v[i] <= v[i - 1] && v[i] < v[i + 1])) {
        ++i;
    }
    ++i;
    while (i + 1 < v.size() && !(v[i] >= v[i - 1] && v[i] > v[i + 1])) {
        ++i;
    }
    if (i + 1 >= v.size()) {
        return std::nan("");
    }
    double lo = pts[i - 1].t;
    double hi = pts[i + 1].t;
    if (!(rho32_slope(state, c, lo) > 0.0 && rho32_slope(state, c, hi) < 0.0)) {
        return pts[i].t;
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (rho32_slope(state, c, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PlateComparison plate_comparison(const SystemConfig& config, int n_samples, double t_max) {
    SystemConfig free = config;
    free.environment = Environment::FreeSpace;
    const auto cp = markov_coefficients(config);
    const auto cf = markov_coefficients(free);
    const auto state = PureBipartiteState::bell_like(config.entanglement_p);

    PlateComparison out;
    out.delta_abs_rho41_at_pi =
        std::abs(density_matrix(state, cp, kPi)(4, 1)) - std::abs(density_matrix(state, cf, kPi)(4, 1));
    const double horizon = t_max > 0.0 ? t_max : std::max(default_t_max(cp), default_t_max(cf));
    const double tp = revival_time(state, cp, horizon, n_samples);
    const double tf = revival_time(state, cf, horizon, n_samples);
    out.revival_found = std::isfinite(tp) && std::isfinite(tf);
    out.delta_t_max = out.revival_found ? (tp - tf) * config.coupling_ratio : std::nan("");
    return out;
}

ExpansionRow expansion_row(SystemConfig config, double coupling_ratio, int steps) {
    config.coupling_ratio = coupling_ratio;
    const double p = config.entanglement_p;
    const auto c = markov_coefficients(config);
    const auto r = exact_gp_kinematic(PureBipartiteState::bell_like(p), c, 1, steps);
    ExpansionRow row{};
    row.coupling_ratio = coupling_ratio;
    row.delta_phi_exact = r.delta_phi;
    row.delta_phi_first_order = gp_first_order_correction(p, config);
    row.delta_phi_second_order = gp_second_order(p, c, 1) - unitary_gp(p, 1);
    row.relative_gap = std::abs(row.delta_phi_first_order - r.delta_phi) / std::abs(r.delta_phi);
    row.relative_gap_second = std::abs(row.delta_phi_second_order - r.delta_phi) / std::abs(r.delta_phi);
    return row;
}

std::vector<double> default_expansion_couplings() {
    std::vector<double> g;
    for (int k = 0; k <= 20; ++k) {
        g.push_back(std::pow(10.0, -6.0 + 0.25 * k));
    }
    return g;
}

SweepResult run_coherence_decay(const SweepSpec& spec) {
    return run_points(expand_grid(spec), spec.threads, "", {}, [&](const GridPoint& pt, std::size_t i) {
        PointOutcome o;
        o.files.push_back({index_name("coherence", i), coherence_table(pt, spec.n_samples, spec.t_max)});
        return o;
    });
}

SweepResult run_plate_comparison(const SweepSpec& spec) {
    const auto header = concat({"d_over_L", "delta_abs_rho41_at_pi", "delta_t_max", "orientation", "note"},
                               config_columns());
    return run_points(expand_grid(spec), spec.threads, "plate.csv", header, [&](const GridPoint& pt, std::size_t) {
        const auto r = plate_comparison(pt.config, spec.n_samples, spec.t_max);
        PointOutcome o;
        o.rows.push_back(concat({format_double(pt.config.d_over_l()), format_double(r.delta_abs_rho41_at_pi),
                                 format_double(r.delta_t_max), pt.pol, r.revival_found ? "" : "no revival found"},
                                config_values(pt.config, pt.pol)));
        if (!r.revival_found) {
            o.message = "no revival found";
        }
        return o;
    });
}

SweepResult run_concurrence_sweep(const SweepSpec& spec) {
    return run_points(expand_grid(spec), spec.threads, "", {}, [&](const GridPoint& pt, std::size_t i) {
        auto c = concurrence_tables(pt, spec.n_samples, spec.t_max);
        PointOutcome o;
        const std::string stem = index_name("concurrence", i);
        o.files.push_back({stem, std::move(c.samples)});
        o.files.push_back({stem.substr(0, stem.size() - 4) + ".events.csv", std::move(c.events)});
        o.message = join(c.warnings, "; ");
        return o;
    });
}

SweepResult run_gp_sweep(const SweepSpec& spec) {
    return run_points(expand_grid(spec), spec.threads, "", {}, [&](const GridPoint& pt, std::size_t i) {
        PointOutcome o;
        o.files.push_back({index_name("gp", i), gp_table(pt, spec.windings, spec.variant, spec.gp_steps)});
        return o;
    });
}

SweepResult run_expansion_validation(const SweepSpec& spec) {
    const auto couplings = spec.coupling_values.empty() ? default_expansion_couplings() : spec.coupling_values;
    const auto header = concat({"coupling_ratio", "delta_phi_exact", "delta_phi_first_order",
                                "delta_phi_second_order", "relative_gap", "relative_gap_second"},
                               config_columns());
    return run_points(expand_grid(spec, false), spec.threads, "expansion.csv", header,
                      [&](const GridPoint& pt, std::size_t) {
                          PointOutcome o;
                          for (double g : couplings) {
                              const auto r = expansion_row(pt.config, g, spec.gp_steps);
                              SystemConfig echo = pt.config;
                              echo.coupling_ratio = g;
                              o.rows.push_back(concat(
                                  {format_double(g), format_double(r.delta_phi_exact),
                                   format_double(r.delta_phi_first_order), format_double(r.delta_phi_second_order),
                                   format_double(r.relative_gap), format_double(r.relative_gap_second)},
                                  config_values(echo, pt.pol)));
                          }
                          return o;
                      });
}

SweepResult run_kernels(const SweepSpec& spec) {
    std::vector<std::string> cols{"a11", "a12", "c11", "c12", "sum_r2_b_ii", "sum_r2_h_ii"};
    for (const char* m : {"x", "y", "z"}) {
        for (const char* b : {"f12", "g12", "b_ii", "h_ii", "b12", "h12"}) {
            cols.push_back(std::string(b) + "_" + m);
        }
    }
    return run_points(expand_grid(spec), spec.threads, "kernels.csv", concat(cols, config_columns()),
                      [&](const GridPoint& pt, std::size_t) {
                          const auto& cfg = pt.config;
                          const auto c = markov_coefficients(cfg);
                          const auto s =
                              special::GeometryScales::from_separation_and_plate(cfg.separation_x, cfg.plate_distance_y);
                          std::vector<std::string> row{
                              format_double(c.a11), format_double(c.a12), format_double(c.c11), format_double(c.c12),
                              format_double(weighted_b_ii(cfg.orientation_1, cfg.plate_distance_y)),
                              format_double(weighted_h_ii(cfg.orientation_1, cfg.plate_distance_y, cfg.si_convention))};
                          for (Axis m : kAxes) {
                              for (double v : {blocks::f12(s.x, m), blocks::g12(s.x, m), blocks::b_ii(s.y, m),
                                               blocks::h_ii(s.y, m, cfg.si_convention), blocks::b12(s, m),
                                               blocks::h12(s, m)}) {
                                  row.push_back(format_double(v));
                              }
                          }
                          PointOutcome o;
                          o.rows.push_back(concat(row, config_values(cfg, pt.pol)));
                          return o;
                      });
}

SweepResult run_sweep(const SweepSpec& spec) {
    switch (spec.quantity) {
        case Quantity::CoherenceDecay: return run_coherence_decay(spec);
        case Quantity::PlateComparison: return run_plate_comparison(spec);
        case Quantity::Concurrence: return run_concurrence_sweep(spec);
        case Quantity::GeometricPhase: return run_gp_sweep(spec);
        case Quantity::ExpansionValidation: return run_expansion_validation(spec);
        case Quantity::Kernels: return run_kernels(spec);
    }
    throw DomainError("unknown quantity");
}

void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : result.files) {
        f.table.write(dir / f.name);
    }
    result.manifest.write(dir / "manifest.csv");
}

}  // namespace twoatom::experiments
