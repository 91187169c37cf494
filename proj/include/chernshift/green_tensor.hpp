#pragma once

#include "chernshift/kubo_conductivity.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace chernshift {

struct GreenParts {
    // propagating (g) and evanescent (h) pieces of gxx, gxy, gzz
    std::complex<double> g1, h1, g2, h2, g3, h3;
};

// Reflected Green tensor at coincident points in units of (omega10/c)^3.
// gyy = gxx and gyx = -gxy are implied.
struct GreenComponents {
    double eta = 0.0; // 2 omega10 z0 / c
    std::complex<double> gxx, gxy, gzz;
    std::optional<GreenParts> parts;
};

struct OscQuadConfig {
    double panel_width = 0.7853981633974483; // pi/4 of phase
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    double evanescent_cutoff = 60.0; // largest l*eta kept
    int max_subdivisions = 4000;
    double causal_tol = 1e-4; // pole offsets below this count as lossless

    void validate() const;
};

// Real frequency, sigma taken at omega. omega_ratio = omega/omega10; the
// resonant shift uses 1. Poles of the reflection denominator that sit on
// the evanescent path (lossless surface modes) are taken in the
// outgoing-wave limit.
GreenComponents green_reflected(double eta, const SheetConductivity &sigma,
                                const OscQuadConfig &cfg, double omega_ratio = 1.0);

// omega = i xi with x = xi/omega10; sigma must be the imaginary-axis
// conductivity (real). All components come out real.
GreenComponents green_imag_axis(double eta, double xi_over_omega10,
                                const SheetConductivity &sigma_at_ixi,
                                const OscQuadConfig &cfg);

struct ProfilePoint {
    double k_par_norm;
    std::complex<double> g1; // integrand of gxx over k_par
    std::complex<double> g2; // integrand of gxy over k_par
    double combination;      // Re g1 + Im g2
};

// Pointwise integrands at omega = omega10. The light line k = 1 is an
// integrable singularity and yields NaN.
std::vector<ProfilePoint> integrand_profile(const SheetConductivity &sigma, double eta,
                                            const std::vector<double> &k_par_grid);

} // namespace chernshift
