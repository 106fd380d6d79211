// twoatom - command-line front end for the two-atom vacuum dynamics library.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twoatom/errors.hpp"
#include "twoatom/experiments/sweeps.hpp"
#include "twoatom/experiments/validation.hpp"

namespace ex = twoatom::experiments;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kNonConvergence = 3 };

struct Options {
    std::string env = "plate";
    double x = 2.0;
    std::optional<double> y;
    std::optional<double> d_over_l;
    double p = 0.5;
    double coupling = 1e-4;
    std::string pol = "y";
    int cycles = 5;
    int samples = 2000;
    double t_max = 0.0;
    std::string out;
    std::string si_convention = "shifted";
    std::string integrand_variant = "derived";

    // sweep
    std::string quantity = "coherence";
    std::vector<std::string> envs;
    std::vector<std::string> pols;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<double> d_over_l_values;
    std::vector<double> p_values;
    std::vector<double> coupling_values;
    unsigned threads = 0;
    int gp_steps = twoatom::kDefaultGpSteps;

    // validate
    std::string inject_fault = "none";
};

ex::GridPoint point_of(const Options& o) {
    ex::GridPoint pt;
    auto& c = pt.config;
    c.environment = ex::parse_environment(o.env);
    c.separation_x = o.x;
    if (o.y) {
        c.plate_distance_y = *o.y;
    } else if (o.d_over_l) {
        c.plate_distance_y = 2.0 * *o.d_over_l * o.x;
    }
    c.entanglement_p = o.p;
    c.coupling_ratio = o.coupling;
    c.orientation_1 = c.orientation_2 = ex::parse_orientation(o.pol);
    c.si_convention = ex::parse_si_convention(o.si_convention);
    pt.pol = o.pol;
    for (const auto& w : c.validate()) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!twoatom::markov_coefficients(c).positive_generator()) {
        std::cerr << "warning: a11 < |a12|; the generated states leave the physical set\n";
    }
    return pt;
}

ex::SweepSpec spec_of(const Options& o) {
    ex::SweepSpec s;
    const auto base = point_of(o);
    s.quantity = ex::parse_quantity(o.quantity);
    s.base = base.config;
    s.base_pol = base.pol;
    for (const auto& e : o.envs) {
        s.environments.push_back(ex::parse_environment(e));
    }
    s.pols = o.pols;
    s.x_values = o.x_values;
    s.y_values = o.y_values;
    s.d_over_l_values = o.d_over_l_values;
    s.p_values = o.p_values;
    s.coupling_values = o.coupling_values;
    s.windings = o.cycles;
    s.n_samples = o.samples;
    s.t_max = o.t_max;
    s.gp_steps = o.gp_steps;
    s.variant = ex::parse_integrand_variant(o.integrand_variant);
    s.threads = o.threads;
    return s;
}

void emit(const ex::CsvTable& t, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << t.to_string();
    } else {
        t.write(out);
    }
}

std::string sidecar(const std::string& out, const std::string& suffix) {
    const auto dot = out.rfind('.');
    const auto slash = out.rfind('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + suffix;
}

int run(CLI::App& app, const Options& o) {
    if (app.got_subcommand("kernels")) {
        ex::SweepSpec s = spec_of(o);
        s.quantity = ex::Quantity::Kernels;
        emit(ex::run_kernels(s).files.front().table, o.out);
    } else if (app.got_subcommand("evolve")) {
        emit(ex::coherence_table(point_of(o), o.samples, o.t_max), o.out);
    } else if (app.got_subcommand("concurrence")) {
        const auto r = ex::concurrence_tables(point_of(o), o.samples, o.t_max);
        for (const auto& w : r.warnings) {
            std::cerr << "warning: " << w << "\n";
        }
        emit(r.samples, o.out);
        if (o.out.empty() || o.out == "-") {
            std::cerr << r.events.body();
        } else {
            r.events.write(sidecar(o.out, ".events.csv"));
        }
    } else if (app.got_subcommand("gp")) {
        emit(ex::gp_table(point_of(o), o.cycles, ex::parse_integrand_variant(o.integrand_variant), o.gp_steps),
             o.out);
    } else if (app.got_subcommand("sweep")) {
        if (o.out.empty()) {
            throw twoatom::DomainError("sweep needs --out <directory>");
        }
        const auto result = ex::run_sweep(spec_of(o));
        ex::write_sweep(result, o.out);
        int errors = 0;
        for (const auto& row : result.manifest.rows) {
            errors += row[2] != "ok";
        }
        std::cerr << result.manifest.rows.size() << " grid points, " << errors << " with errors; manifest in "
                  << o.out << "/manifest.csv\n";
    } else if (app.got_subcommand("validate")) {
        ex::ValidationOptions v;
        v.si_convention = ex::parse_si_convention(o.si_convention);
        v.threads = o.threads;
        if (o.inject_fault == "F") {
            v.factors_under_test = ex::corrupted_factors;
        } else if (o.inject_fault != "none") {
            throw twoatom::DomainError("unknown fault '" + o.inject_fault + "' (none|F)");
        }
        const auto results = ex::run_validation(v);
        const std::string doc = ex::report_json(results, v).dump(2) + "\n";
        if (o.out.empty() || o.out == "-") {
            std::cout << doc;
        } else {
            std::ofstream(o.out) << doc;
        }
        for (const auto& r : results) {
            if (r.acceptance && !r.passed) {
                std::cerr << "FAILED " << r.id << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
            }
        }
        return ex::all_acceptance_passed(results) ? kOk : kValidation;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two dipole-coupled atoms in vacuum, optionally near a conducting plate"};
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--env", o.env, "free | plate")->check(CLI::IsMember({"free", "plate"}));
    app.add_option("--x", o.x, "separation L w0");
    auto* y = app.add_option("--y", o.y, "plate distance 2 d w0");
    auto* dl = app.add_option("--d-over-l", o.d_over_l, "d / L (uses --x)");
    y->excludes(dl);
    app.add_option("--p", o.p, "initial state sqrt(p)|11> + sqrt(1-p)|00>");
    app.add_option("--coupling", o.coupling, "gamma0 / w0");
    app.add_option("--pol", o.pol, "x | y | z | iso | a,b,c");
    app.add_option("--cycles", o.cycles, "GP windings N (quasi-cycles of length pi / w0)");
    app.add_option("--samples", o.samples, "time samples per trajectory");
    app.add_option("--t-max", o.t_max, "trajectory length in 1/w0 (default 10 / a11)");
    app.add_option("--out", o.out, "output file (sweep: directory); stdout when omitted");
    app.add_option("--si-convention", o.si_convention, "shifted | plain")
        ->check(CLI::IsMember({"shifted", "plain"}));
    app.add_option("--integrand-variant", o.integrand_variant, "derived | printed")
        ->check(CLI::IsMember({"derived", "printed"}));
    app.add_option("--gp-steps", o.gp_steps, "kinematic GP steps per winding");
    app.add_option("--threads", o.threads, "worker threads (0: all cores)");

    app.add_subcommand("kernels", "Markov coefficients and kernel building blocks");
    app.add_subcommand("evolve", "coherence decay |rho41|, |rho32| and populations");
    app.add_subcommand("concurrence", "concurrence trajectory plus death / birth events");
    app.add_subcommand("gp", "geometric phase for N = 1..cycles");
    auto* sweep = app.add_subcommand("sweep", "grid sweep writing one CSV set per figure");
    sweep->add_option("--quantity", o.quantity, "coherence | plate | concurrence | gp | expansion | kernels")
        ->check(CLI::IsMember({"coherence", "plate", "concurrence", "gp", "expansion", "kernels"}));
    sweep->add_option("--envs", o.envs, "environment list")->delimiter(',');
    sweep->add_option("--pols", o.pols, "orientation presets, separated by ';' or repeated")->delimiter(';');
    sweep->add_option("--x-values", o.x_values)->delimiter(',');
    sweep->add_option("--y-values", o.y_values)->delimiter(',');
    sweep->add_option("--d-over-l-values", o.d_over_l_values)->delimiter(',');
    sweep->add_option("--p-values", o.p_values)->delimiter(',');
    sweep->add_option("--coupling-values", o.coupling_values)->delimiter(',');
    auto* validate = app.add_subcommand("validate", "run the invariant suite and print a JSON report");
    validate->add_option("--inject-fault", o.inject_fault, "none | F (perturb F(t) to exercise the oracle)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return run(app, o);
    } catch (const twoatom::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const twoatom::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
