// sweeps.hpp - parameter grids and the per-figure data products.
#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "twoatom/entanglement.hpp"
#include "twoatom/experiments/csv.hpp"
#include "twoatom/geometric_phase.hpp"

namespace twoatom::experiments {

enum class Quantity { CoherenceDecay, PlateComparison, Concurrence, GeometricPhase, ExpansionValidation, Kernels };

const char* to_string(Quantity q);
// coherence | plate | concurrence | gp | expansion | kernels
Quantity parse_quantity(const std::string& s);

// x | y | z | iso | a,b,c (normalized)
DipoleOrientation parse_orientation(const std::string& s);
Environment parse_environment(const std::string& s);
special::SiConvention parse_si_convention(const std::string& s);
IntegrandVariant parse_integrand_variant(const std::string& s);

struct GridPoint {
    SystemConfig config;
    std::string pol;
};

struct SweepSpec {
    Quantity quantity = Quantity::CoherenceDecay;
    SystemConfig base;
    std::string base_pol = "y";
    std::vector<Environment> environments;
    std::vector<std::string> pols;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<double> d_over_l_values;  // used only when y_values is empty
    std::vector<double> p_values;
    std::vector<double> coupling_values;  // expansion: the per-row coupling axis
    int windings = 5;
    int n_samples = 2000;
    double t_max = 0.0;  // <= 0 selects 10 / a11 per grid point
    int gp_steps = kDefaultGpSteps;
    IntegrandVariant variant = IntegrandVariant::Derived;
    unsigned threads = 0;  // 0: hardware concurrency, 1: serial
};

// Cartesian product in the order environment, pol, x, y (or d/L), p,
// coupling; empty lists fall back to the base value. Every point is
// validated; DomainError on hard violations.
std::vector<GridPoint> expand_grid(const SweepSpec& spec, bool include_coupling = true);

double default_t_max(const MarkovCoefficients& coeffs);

// Runs fn(i) for i in [0, n) on up to `threads` workers; results are stored
// by index so the output does not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Per-point products.
CsvTable coherence_table(const GridPoint& point, int n_samples, double t_max);

struct ConcurrenceOutput {
    CsvTable samples;
    CsvTable events;
    std::vector<std::string> warnings;
};
ConcurrenceOutput concurrence_tables(const GridPoint& point, int n_samples, double t_max);

CsvTable gp_table(const GridPoint& point, int windings, IntegrandVariant variant, int steps);

// First local maximum of |rho32(t)| after its first interior local minimum,
// refined to 1e-6 by bisection on the sign of d|rho32|/dt. NaN when there is
// no such revival on [0, t_max].
double revival_time(const PureBipartiteState& state, const MarkovCoefficients& coeffs, double t_max,
                    int n_samples);

struct PlateComparison {
    double delta_abs_rho41_at_pi = 0.0;  // plate minus free
    double delta_t_max = 0.0;            // plate minus free, units of 1/gamma0
    bool revival_found = false;
};
// The free-space operand is the same configuration with the plate removed.
PlateComparison plate_comparison(const SystemConfig& config, int n_samples, double t_max);

struct ExpansionRow {
    double coupling_ratio;
    double delta_phi_exact;
    double delta_phi_first_order;
    double delta_phi_second_order;
    double relative_gap;         // first order vs exact
    double relative_gap_second;  // second order vs exact
};
ExpansionRow expansion_row(SystemConfig config, double coupling_ratio, int steps);

std::vector<double> default_expansion_couplings();

struct NamedTable {
    std::string name;
    CsvTable table;
};

struct SweepResult {
    std::vector<NamedTable> files;
    CsvTable manifest;  // one row per grid point: file, status, message, config
};

SweepResult run_coherence_decay(const SweepSpec& spec);
SweepResult run_plate_comparison(const SweepSpec& spec);
SweepResult run_concurrence_sweep(const SweepSpec& spec);
SweepResult run_gp_sweep(const SweepSpec& spec);
SweepResult run_expansion_validation(const SweepSpec& spec);
SweepResult run_kernels(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

// Writes every table plus manifest.csv into dir (created if needed).
void write_sweep(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace twoatom::experiments
