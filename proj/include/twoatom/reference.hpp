// reference.hpp - slow independent evaluations used as test oracles. Nothing
// in the main library depends on these.
#pragma once

#include <complex>

#include "twoatom/kernels.hpp"

namespace twoatom::reference {

// Maclaurin series summed in 50-digit arithmetic.
double sine_integral_series(double y);
double cosine_integral_series(double y);

// Accumulated factors by adaptive quadrature of their defining integrals,
// with Gamma^{ij}(t') = int_0^t' a_ij and gamma^{ij}(t') = int_0^t' c_ij.
struct FactorIntegrals {
    double F;
    double G;
    std::complex<double> Fp;
    std::complex<double> Gp;
};

FactorIntegrals factors_by_quadrature(const MarkovCoefficients& coeffs, double t);

// Kernel building blocks written out branch by branch in 50-digit arithmetic.
double f12_direct(double x, Axis m);
double g12_direct(double x, Axis m);
double b_ii_direct(double y, Axis m);
double h_ii_direct(double y, Axis m, special::SiConvention convention = special::SiConvention::Shifted);
double b12_direct(double x, double y, Axis m);
double h12_direct(double x, double y, Axis m);

MarkovCoefficients markov_coefficients_direct(const SystemConfig& config);

}  // namespace twoatom::reference
