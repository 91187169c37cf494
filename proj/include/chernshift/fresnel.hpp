#pragma once

#include "chernshift/kubo_conductivity.hpp"

#include <complex>

namespace chernshift {

struct ReflectionSet {
    std::complex<double> r_ss, r_sp, r_ps, r_pp;
    std::complex<double> t_ss, t_sp, t_ps, t_pp;
    std::complex<double> delta; // infinite on the light line when sigma_xx != 0
    double k_par_norm = 0.0;
    std::complex<double> kz_norm;
};

// kz = sqrt(ratio^2 - k^2) with Re kz >= 0 and Im kz >= 0.
std::complex<double> kz_branch(double k_par_norm, double omega_ratio);

// Dimensionless coefficients with k in units of omega10/c and
// omega_ratio = omega/omega10. Numerator and denominator are multiplied by
// kz first, so the light line k = omega_ratio is finite.
// Throws ResonanceError when |Delta| < 1e-12.
ReflectionSet reflection_set(double k_par_norm, double omega_ratio,
                             const SheetConductivity &sigma);

// Same from dimensional Gaussian-unit conductivities, with k_par in
// units of 1/length, omega in 1/time and c the speed of light.
// Not defined on the light line.
ReflectionSet reflection_set_dimensional(double k_par, double omega,
                                         std::complex<double> sigma_xx,
                                         std::complex<double> sigma_xy, double c);

} // namespace chernshift
