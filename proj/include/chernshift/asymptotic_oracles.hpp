#pragma once

#include "chernshift/cp_shift.hpp"
#include "chernshift/green_tensor.hpp"

namespace chernshift {

enum class ClosedFormRegime {
    nondispersive_full,
    nondispersive_near,
    nondispersive_far,
    dispersive_near,
    dispersive_far_lowhigh,
};

// Resonant shift formulas. Near forms assume eta << 1 (use eta <= 0.01),
// far forms eta >> 1 (eta >= 20). Nondispersive forms read chern and
// alpha; the perpendicular dispersive far form reads sxx_imag, the
// imaginary part of sigma_xx at omega10. sxy_real is kept for callers
// that tabulate the Hall part alongside.
struct ClosedForm {
    PolarizationKind polarization = PolarizationKind::perpendicular;
    ClosedFormRegime regime = ClosedFormRegime::nondispersive_full;
    int chern = 1;
    double alpha = 0.0; // 0 selects the fine-structure constant
    double sxx_imag = 0.0;
    double sxy_real = 0.0;
};

double eval_closed_form(const ClosedForm &cf, double eta);

// Leading far-field Green components at omega10. The xy and zz entries
// carry 1/sigma_xx and are NaN when sigma_xx = 0.
GreenComponents green_far_field(double eta, const SheetConductivity &sigma);

} // namespace chernshift
