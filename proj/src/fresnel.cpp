#include "chernshift/fresnel.hpp"

#include "chernshift/constants.hpp"
#include "chernshift/errors.hpp"

#include <cmath>
#include <limits>

namespace chernshift {

using cplx = std::complex<double>;

cplx kz_branch(double k_par_norm, double omega_ratio) {
    double x = omega_ratio * omega_ratio - k_par_norm * k_par_norm;
    return x >= 0.0 ? cplx(std::sqrt(x), 0.0) : cplx(0.0, std::sqrt(-x));
}

ReflectionSet reflection_set(double k_par_norm, double omega_ratio,
                             const SheetConductivity &sigma) {
    if (!(omega_ratio > 0.0))
        throw std::invalid_argument("omega/omega10 must be positive");
    const cplx s = sigma.sxx, h = sigma.sxy;
    const cplx S = s * s + h * h;
    const double w = omega_ratio;
    ReflectionSet r;
    r.k_par_norm = k_par_norm;
    const cplx kz = kz_branch(k_par_norm, w);
    r.kz_norm = kz;

    // kz * Delta
    const cplx dk = kz * (1.0 + S) + (kz * kz / w + w) * s;
    if (s == 0.0) {
        r.delta = 1.0 + S;
    } else if (kz == 0.0) {
        r.delta = cplx(std::numeric_limits<double>::infinity(), 0.0);
    } else {
        r.delta = dk / kz;
    }
    if (std::abs(r.delta) < 1e-12)
        throw ResonanceError("reflection denominator vanishes at this wavevector");

    if (s == 0.0) {
        r.r_ss = -S / r.delta;
        r.r_pp = S / r.delta;
        r.r_ps = -h / r.delta;
        r.t_ss = 1.0 / r.delta;
        r.t_pp = 1.0 / r.delta;
    } else {
        r.r_ss = -(kz * S + w * s) / dk;
        r.r_pp = (kz * S + kz * kz * s / w) / dk;
        r.r_ps = -kz * h / dk;
        r.t_ss = (kz + kz * kz * s / w) / dk;
        r.t_pp = (kz + w * s) / dk;
    }
    r.r_sp = r.r_ps;
    r.t_ps = r.r_ps;
    r.t_sp = r.t_ps;
    return r;
}

ReflectionSet reflection_set_dimensional(double k_par, double omega, cplx sigma_xx,
                                         cplx sigma_xy, double c) {
    const double f = 2.0 * kPi / c;
    const cplx root = kz_branch(c * k_par / omega, 1.0); // (1 - (ck/omega)^2)^(1/2)
    const cplx fxx = f * sigma_xx, fxy = f * sigma_xy;
    const cplx sq = fxx * fxx + fxy * fxy;
    const cplx delta = 1.0 + (root + 1.0 / root) * fxx + sq;
    ReflectionSet r;
    r.k_par_norm = k_par;
    r.kz_norm = root;
    r.delta = delta;
    r.r_ss = -(sq + fxx / root) / delta;
    r.r_ps = -fxy / delta;
    r.r_sp = r.r_ps;
    r.r_pp = (sq + root * fxx) / delta;
    r.t_ss = (1.0 + root * fxx) / delta;
    r.t_ps = -fxy / delta;
    r.t_sp = r.t_ps;
    r.t_pp = (1.0 + fxx / root) / delta;
    return r;
}

} // namespace chernshift
