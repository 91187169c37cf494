#include "chernshift/asymptotic_oracles.hpp"

#include "chernshift/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chernshift {

namespace {

bool is_circular(PolarizationKind k) {
    return k == PolarizationKind::circular_right || k == PolarizationKind::circular_left;
}

double nondispersive(const ClosedForm &cf, double eta) {
    const double alpha = cf.alpha > 0.0 ? cf.alpha : kFineStructure;
    const double ca = cf.chern * alpha;
    const double r = ca * ca / (1.0 + ca * ca);
    // the left-handed circular response is the right-handed one with C -> -C
    const double lin = (cf.polarization == PolarizationKind::circular_left ? -ca : ca) /
                       (1.0 + ca * ca);
    const double c = std::cos(eta), s = std::sin(eta);
    const double e3 = eta * eta * eta;

    switch (cf.regime) {
    case ClosedFormRegime::nondispersive_full:
        if (cf.polarization == PolarizationKind::perpendicular)
            return -1.5 * r * (c + eta * s) / e3;
        {
            double par = 0.75 * r * ((eta * eta - 1.0) * c - eta * s) / e3;
            if (!is_circular(cf.polarization))
                return par;
            return par + 0.75 * lin * (c + eta * s) / (eta * eta);
        }
    case ClosedFormRegime::nondispersive_near:
        if (cf.polarization == PolarizationKind::perpendicular)
            return -1.5 * r / e3;
        return -0.75 * r / e3;
    case ClosedFormRegime::nondispersive_far:
        if (cf.polarization == PolarizationKind::perpendicular)
            return -1.5 * r * s / (eta * eta);
        if (!is_circular(cf.polarization))
            return 0.75 * r * c / eta;
        return 0.75 * (r * c + lin * s) / eta;
    default: break;
    }
    throw std::logic_error("not a nondispersive regime");
}

} // namespace

double eval_closed_form(const ClosedForm &cf, double eta) {
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    switch (cf.regime) {
    case ClosedFormRegime::dispersive_near:
        return (cf.polarization == PolarizationKind::perpendicular ? -1.5 : -0.75) /
               (eta * eta * eta);
    case ClosedFormRegime::dispersive_far_lowhigh:
        if (cf.polarization == PolarizationKind::perpendicular)
            return 0.75 * cf.sxx_imag * std::sin(eta) / eta;
        return 0.375 * std::cos(eta) / eta;
    default: return nondispersive(cf, eta);
    }
}

GreenComponents green_far_field(double eta, const SheetConductivity &sigma) {
    using cplx = std::complex<double>;
    const cplx i(0.0, 1.0);
    const cplx ph = std::exp(i * eta);
    GreenComponents g;
    g.eta = eta;
    g.gxx = -ph / (2.0 * eta);
    if (sigma.sxx == 0.0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        g.gxy = g.gzz = cplx(nan, nan);
        return g;
    }
    const cplx ssum = sigma.sxx * sigma.sxx + sigma.sxy * sigma.sxy;
    g.gxy = -(sigma.sxy / sigma.sxx) * (eta * eta - 2.0 + 2.0 * i * eta) * ph / (eta * eta * eta);
    g.gzz = i / (eta * eta) * (ssum / sigma.sxx) * (1.0 - i * eta) * ph;
    return g;
}

} // namespace chernshift
