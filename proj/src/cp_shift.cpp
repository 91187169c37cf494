#include "chernshift/cp_shift.hpp"

#include "chernshift/constants.hpp"
#include "chernshift/quadrature.hpp"

#include <cmath>

namespace chernshift {

using cplx = std::complex<double>;

Polarization Polarization::of(PolarizationKind kind) {
    Polarization p;
    p.kind = kind;
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case PolarizationKind::perpendicular: p.n = {0.0, 0.0, 1.0}; break;
    case PolarizationKind::parallel_x: p.n = {1.0, 0.0, 0.0}; break;
    case PolarizationKind::circular_right: p.n = {cplx(-r, 0.0), cplx(0.0, -r), 0.0}; break;
    case PolarizationKind::circular_left: p.n = {cplx(-r, 0.0), cplx(0.0, r), 0.0}; break;
    }
    return p;
}

const char *polarization_name(PolarizationKind kind) {
    switch (kind) {
    case PolarizationKind::perpendicular: return "perp";
    case PolarizationKind::parallel_x: return "par";
    case PolarizationKind::circular_right: return "circ+";
    case PolarizationKind::circular_left: return "circ-";
    }
    return "?";
}

PolarizationKind parse_polarization(const std::string &name) {
    if (name == "perp" || name == "perpendicular")
        return PolarizationKind::perpendicular;
    if (name == "par" || name == "parallel")
        return PolarizationKind::parallel_x;
    if (name == "circ+" || name == "circular_right")
        return PolarizationKind::circular_right;
    if (name == "circ-" || name == "circular_left")
        return PolarizationKind::circular_left;
    throw std::invalid_argument("unknown polarization '" + name + "'");
}

Surface Surface::dispersive(const ModelParams &p, const QuadratureConfig &q) {
    p.validate();
    q.validate();
    Surface s;
    s.dispersive_ = true;
    s.p_ = p;
    s.q_ = q;
    s.real_cache_ = std::make_shared<ConductivityCache>(p, q, false);
    s.imag_cache_ = std::make_shared<ConductivityCache>(p, q, true);
    return s;
}

Surface Surface::nondispersive(int chern) {
    SheetConductivity c = nondispersive_conductivity(chern);
    Surface s = constant(c.sxx, c.sxy);
    s.chern_ = chern;
    s.p_.u = chern;
    return s;
}

Surface Surface::constant(cplx sxx, cplx sxy) {
    Surface s;
    s.sxx_ = sxx;
    s.sxy_ = sxy;
    return s;
}

SheetConductivity Surface::real_axis(double omega_over_t) const {
    if (dispersive_)
        return real_cache_->get(omega_over_t);
    SheetConductivity c;
    c.omega_over_t = omega_over_t;
    c.sxx = sxx_;
    c.sxy = sxy_;
    c.regime = Regime::static_limit;
    return c;
}

SheetConductivity Surface::imag_axis(double xi_over_t) const {
    if (dispersive_)
        return imag_cache_->get(xi_over_t);
    SheetConductivity c;
    c.omega_over_t = xi_over_t;
    c.sxx = sxx_;
    c.sxy = sxy_;
    c.regime = Regime::imaginary_axis;
    return c;
}

cplx contract(const GreenComponents &g, const std::array<cplx, 3> &left,
              const std::array<cplx, 3> &right) {
    const cplx G[3][3] = {{g.gxx, g.gxy, 0.0}, {-g.gxy, g.gxx, 0.0}, {0.0, 0.0, g.gzz}};
    cplx sum = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            sum += left[a] * G[a][b] * right[b];
    return sum;
}

double contract_resonant(const GreenComponents &g, const Polarization &pol) {
    const cplx G[3][3] = {{g.gxx, g.gxy, 0.0}, {-g.gxy, g.gxx, 0.0}, {0.0, 0.0, g.gzz}};
    cplx sum = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            sum += pol.n[a] * std::conj(pol.n[b]) * (G[a][b] + std::conj(G[b][a]));
    return -0.375 * sum.real();
}

double resonant_shift(const Polarization &pol, const SheetConductivity &sigma_at_omega10,
                      double eta, const OscQuadConfig &cfg) {
    return contract_resonant(green_reflected(eta, sigma_at_omega10, cfg, 1.0), pol);
}

namespace {

ShiftMetadata metadata(const Polarization &pol, double omega10_over_t, const Surface &s) {
    return {pol.kind, omega10_over_t, s.params().u / s.params().t, s.is_dispersive()};
}

std::array<cplx, 3> conjugate(const std::array<cplx, 3> &v) {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

} // namespace

ShiftResult resonant_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                           double eta, const OscQuadConfig &cfg) {
    ShiftResult r;
    r.eta = eta;
    r.resonant = resonant_shift(pol, surface.real_axis(omega10_over_t), eta, cfg);
    r.metadata = metadata(pol, omega10_over_t, surface);
    return r;
}

double nonresonant_level_shift(AtomState state, const Polarization &pol, double omega10_over_t,
                               const Surface &surface, double eta, const OscQuadConfig &cfg,
                               const NonresonantOptions &nopt) {
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    if (surface.is_dispersive() && !(omega10_over_t > 0.0))
        throw std::invalid_argument("omega10/t must be positive");
    const bool excited = state == AtomState::excited;
    // mu^{10}_a mu^{01}_b = mu^2 n_a n_b^* for the excited state, the
    // conjugate ordering for the ground state.
    const auto left = excited ? pol.n : conjugate(pol.n);
    const auto right = excited ? conjugate(pol.n) : pol.n;
    const double sgn = excited ? 1.0 : -1.0;

    // xi = omega10 tan(theta) maps dx/(1+x^2) onto dtheta over [0, pi/2).
    auto integrand = [&](double theta) {
        double x = std::tan(theta);
        if (x * eta > 700.0)
            return 0.0;
        SheetConductivity sig = surface.imag_axis(x * omega10_over_t);
        GreenComponents g = green_imag_axis(eta, x, sig, cfg);
        cplx y = contract(g, left, right);
        return sgn * y.real() - x * y.imag();
    };
    AdaptiveOptions opt;
    opt.rel_tol = nopt.rel_tol;
    opt.abs_tol = nopt.abs_tol;
    opt.max_intervals = nopt.max_intervals;
    const double h = 0.5 * kPi;
    auto res = integrate_adaptive<double>(integrand, {0.0, 0.25 * h, 0.5 * h, 0.75 * h, h}, opt);
    return 3.0 / (4.0 * kPi) * res.value;
}

double nonresonant_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                         double eta, const OscQuadConfig &cfg, const NonresonantOptions &nopt) {
    return nonresonant_level_shift(AtomState::excited, pol, omega10_over_t, surface, eta, cfg,
                                   nopt) -
           nonresonant_level_shift(AtomState::ground, pol, omega10_over_t, surface, eta, cfg,
                                   nopt);
}

ShiftResult total_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                        double eta, const OscQuadConfig &cfg, bool with_nonresonant,
                        const NonresonantOptions &nopt) {
    ShiftResult r = resonant_shift(pol, omega10_over_t, surface, eta, cfg);
    if (with_nonresonant) {
        r.nonresonant = nonresonant_shift(pol, omega10_over_t, surface, eta, cfg, nopt);
        r.total = r.resonant + *r.nonresonant;
    }
    return r;
}

} // namespace chernshift
